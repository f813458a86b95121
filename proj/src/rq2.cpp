#include "wepkit/rq2.hpp"

#include "wepkit/templates.hpp"
#include "wepkit/text.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

namespace wepkit {

std::string_view to_string(NumbersId id) { return id == NumbersId::Narrow ? "narrow" : "wide"; }

NumbersId parse_numbers_id(std::string_view s) {
    if (text::iequals(s, "narrow")) return NumbersId::Narrow;
    if (text::iequals(s, "wide")) return NumbersId::Wide;
    throw ConfigError("unknown numbers set '" + std::string(s) + "' (valid: narrow, wide)");
}

double std_dev_of(NumbersId id) { return id == NumbersId::Narrow ? 10.0 : 40.0; }

EmpiricalSample sample_numbers(NumbersId id, std::int64_t seed) {
    std::mt19937_64 engine(static_cast<std::uint64_t>(seed));
    // (0, 1]: avoids log(0).
    auto uniform = [&engine] { return (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53; };
    EmpiricalSample s;
    s.kind = id;
    s.id = std::string(to_string(id)) + "@" + std::to_string(seed);
    s.std_dev = std_dev_of(id);
    s.seed = seed;
    while (s.observations.size() < kSampleSize) {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        for (double z : {r * std::cos(theta), r * std::sin(theta)}) {
            if (s.observations.size() < kSampleSize) {
                s.observations.push_back(static_cast<int>(std::round(s.mean + s.std_dev * z)));
            }
        }
    }
    return s;
}

std::vector<EmpiricalSample> parse_numbers_table(std::istream& in, const std::string& source_name) {
    std::vector<EmpiricalSample> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty() || line.front() == '#') continue;
        const auto where = source_name + ":" + std::to_string(line_no);
        auto f = text::split(line, '\t');
        if (f.size() != 5) throw DataError(where + ": expected id, mean, std_dev, seed, observations");
        EmpiricalSample s;
        try {
            s.kind = parse_numbers_id(f[0]);
            s.id = f[0];
            s.mean = std::stod(f[1]);
            s.std_dev = std::stod(f[2]);
            s.seed = std::stoll(f[3]);
            for (const auto& v : text::split(f[4], ',')) s.observations.push_back(std::stoi(std::string(text::trim(v))));
        } catch (const std::exception& e) {
            throw DataError(where + ": " + e.what());
        }
        if (s.observations.size() != kSampleSize) throw DataError(where + ": expected 20 observations");
        if (s.std_dev != std_dev_of(s.kind)) throw DataError(where + ": std_dev does not match the numbers set");
        out.push_back(std::move(s));
    }
    return out;
}

EmpiricalSample numbers_fixture(NumbersId id, const std::filesystem::path& data_dir) {
    const auto dir = data_dir.empty() ? default_data_dir() : data_dir;
    const auto path = dir / "numbers" / "fixtures.tsv";
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    for (auto& s : parse_numbers_table(in, path.filename().string())) {
        if (s.kind == id) return s;
    }
    throw DataError("no '" + std::string(to_string(id)) + "' set in " + path.string());
}

CutPoints compute_cut_points(double mean, double std_dev, double level) {
    confidence_index(level);
    static const boost::math::normal standard;
    const double z = boost::math::quantile(standard, (1.0 + level) / 2.0);
    CutPoints c;
    c.level = level;
    c.low = static_cast<int>(std::round(mean - z * std_dev));
    c.high = static_cast<int>(std::round(mean + z * std_dev));
    c.p_below_low = boost::math::cdf(standard, (c.low - mean) / std_dev);
    c.p_below_high = boost::math::cdf(standard, (c.high - mean) / std_dev);
    return c;
}

std::string render_interval(IntervalKind kind, int low, int high) {
    const auto l = std::to_string(low);
    const auto h = std::to_string(high);
    switch (kind) {
        case IntervalKind::BelowLow: return "below " + l;
        case IntervalKind::AboveLow: return "above " + l;
        case IntervalKind::Between: return "between " + l + " and " + h;
        case IntervalKind::BelowLowOrAboveHigh: return "below " + l + " or above " + h;
        case IntervalKind::BelowHigh: return "below " + h;
        case IntervalKind::AboveHigh: return "above " + h;
    }
    return {};
}

std::string render_interval(IntervalKind kind, const CutPoints& cuts) { return render_interval(kind, cuts.low, cuts.high); }

bool interval_contains(IntervalKind kind, int low, int high, double x) {
    switch (kind) {
        case IntervalKind::BelowLow: return x < low;
        case IntervalKind::AboveLow: return x > low;
        case IntervalKind::Between: return x > low && x < high;
        case IntervalKind::BelowLowOrAboveHigh: return x < low || x > high;
        case IntervalKind::BelowHigh: return x < high;
        case IntervalKind::AboveHigh: return x > high;
    }
    return false;
}

double empirical_proportion(IntervalKind kind, int low, int high, std::span<const int> observations) {
    if (observations.empty()) throw DataError("empty observation list");
    std::size_t inside = 0;
    for (int x : observations) inside += interval_contains(kind, low, high, x) ? 1 : 0;
    return static_cast<double>(inside) / static_cast<double>(observations.size());
}

double gaussian_interval_probability(IntervalKind kind, int low, int high, double mean, double sd) {
    const boost::math::normal dist(mean, sd);
    const double below_low = boost::math::cdf(dist, low);
    const double below_high = boost::math::cdf(dist, high);
    switch (kind) {
        case IntervalKind::BelowLow: return below_low;
        case IntervalKind::AboveLow: return 1.0 - below_low;
        case IntervalKind::Between: return below_high - below_low;
        case IntervalKind::BelowLowOrAboveHigh: return below_low + (1.0 - below_high);
        case IntervalKind::BelowHigh: return below_high;
        case IntervalKind::AboveHigh: return 1.0 - below_high;
    }
    return 0.0;
}

const std::vector<ScenarioTemplate>& scenario_templates() {
    // Only the height wording is published; score and sound follow it with
    // wording written for this project.
    static const std::vector<ScenarioTemplate> scenarios{
        {"height",
         "I randomly picked 20 specimens from an unknown population. I recorded their heights, which are {numbers}.",
         "Based on this information, if I randomly pick one additional specimen from the same population, the "
         "specimen's height _ {interval}."},
        {"score",
         "I randomly picked 20 students from an unknown population. I recorded their test scores, which are "
         "{numbers}.",
         "Based on this information, if I randomly pick one additional student from the same population, the "
         "student's test score _ {interval}."},
        {"sound",
         "I randomly picked 20 recordings from an unknown population. I recorded their sound levels, which are "
         "{numbers}.",
         "Based on this information, if I randomly pick one additional recording from the same population, the "
         "recording's sound level _ {interval}."},
    };
    return scenarios;
}

const ScenarioTemplate& find_scenario(std::string_view id) {
    for (const auto& s : scenario_templates()) {
        if (s.id == id) return s;
    }
    throw ConfigError("unknown scenario '" + std::string(id) + "' (valid: height, score, sound)");
}

namespace {

std::string replace_once(std::string s, std::string_view token, std::string_view value) {
    const auto pos = s.find(token);
    if (pos != std::string::npos) s.replace(pos, token.size(), value);
    return s;
}

std::string level_slug(double level) { return text::format_double(level); }

}  // namespace

PromptRecord build_rq2_prompt(const ScenarioTemplate& scenario, const ChoiceSet& choices,
                              const EmpiricalSample& sample, IntervalKind kind, double level, Mode mode) {
    const auto cuts = compute_cut_points(sample.mean, sample.std_dev, level);

    std::vector<std::string> lettered;
    for (const auto& c : choices.choices) lettered.push_back(c.lettered());
    const auto choice_list = text::join(lettered, " ");

    std::vector<std::string> numbers;
    for (int x : sample.observations) numbers.push_back(std::to_string(x));

    const auto preamble = replace_once(scenario.preamble, "{numbers}", text::join(numbers, ", "));
    const auto sentence = replace_once(scenario.sentence_frame, "{interval}", render_interval(kind, cuts));

    std::string body;
    if (mode == Mode::Standard) {
        body = std::string(kRq2Lead) + choice_list + ". " + preamble + " " + sentence;
    } else {
        body = std::string(kRq2CotLead) + choice_list + ". " + std::string(kRq2CotTail) + " " + preamble + " " +
               sentence;
    }

    PromptRecord p;
    p.id = "rq2/" + std::string(to_string(mode)) + "/" + scenario.id + "/" + std::string(to_string(choices.id)) +
           "/" + sample.id + "/" + level_slug(level) + "/" + std::string(to_string(kind));
    p.corpus = Corpus::Rq2;
    p.body = std::move(body);
    p.language = Language::English;
    p.mode = mode;
    p.provenance = Rq2Provenance{scenario.id, choices.id, sample.id, kind, level, cuts.low, cuts.high,
                                 sample.observations};
    return p;
}

std::vector<PromptRecord> generate_rq2_corpus(Mode mode, const EmpiricalSample& narrow, const EmpiricalSample& wide) {
    std::vector<PromptRecord> out;
    out.reserve(360);
    for (const auto& scenario : scenario_templates()) {
        for (auto set_id : kAllChoiceSets) {
            for (const auto* sample : {&narrow, &wide}) {
                for (double level : confidence_points()) {
                    for (auto kind : kAllIntervalKinds) {
                        out.push_back(build_rq2_prompt(scenario, choice_set(set_id), *sample, kind, level, mode));
                    }
                }
            }
        }
    }
    return out;
}

std::vector<PromptRecord> generate_rq2_corpus(Mode mode) {
    return generate_rq2_corpus(mode, numbers_fixture(NumbersId::Narrow), numbers_fixture(NumbersId::Wide));
}

double empirical_proportion(const PromptRecord& prompt) {
    if (prompt.corpus != Corpus::Rq2) throw ConfigError("prompt " + prompt.id + " is not an RQ2 prompt");
    const auto& r = prompt.rq2();
    return empirical_proportion(r.interval, r.low, r.high, r.observations);
}

std::size_t empirical_ground_truth(const PromptRecord& prompt) {
    return choice_set(prompt.rq2().choice_set).rank_for_probability(empirical_proportion(prompt));
}

}  // namespace wepkit
