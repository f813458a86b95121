#include "wepkit/metrics.hpp"

#include "wepkit/rq2.hpp"
#include "wepkit/text.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace wepkit {

std::string_view to_string(Metric m) {
    switch (m) {
        case Metric::Pairwise: return "pairwise";
        case Metric::Monotonicity: return "monotonicity";
        case Metric::Empirical: return "empirical";
        case Metric::EmpiricalMonotonicity: return "empirical_monotonicity";
    }
    return "?";
}

Metric parse_metric(std::string_view s) {
    for (auto m : kAllMetrics) {
        if (text::iequals(s, to_string(m))) return m;
    }
    throw ConfigError("unknown metric '" + std::string(s) +
                      "' (valid: pairwise, monotonicity, empirical, empirical_monotonicity)");
}

std::string_view to_string(Stratifier s) {
    switch (s) {
        case Stratifier::Scenario: return "scenario";
        case Stratifier::ChoiceSet: return "choice_set";
        case Stratifier::Numbers: return "numbers";
        case Stratifier::Mode: return "mode";
    }
    return "?";
}

std::string UnitVerdict::stratum(Stratifier axis) const {
    switch (axis) {
        case Stratifier::Scenario: return scenario;
        case Stratifier::ChoiceSet: return std::string(to_string(choice_set));
        case Stratifier::Numbers: return numbers;
        case Stratifier::Mode: return std::string(to_string(mode));
    }
    return {};
}

std::string UnitVerdict::key_without(Stratifier axis) const {
    std::string key;
    for (auto s : {Stratifier::Mode, Stratifier::Scenario, Stratifier::ChoiceSet, Stratifier::Numbers}) {
        if (s == axis) continue;
        key += stratum(s);
        key += '/';
    }
    return key + detail;
}

std::map<std::string, double> MetricReport::stratified(Stratifier axis) const {
    std::map<std::string, std::pair<int, int>> tally;
    for (const auto& item : items) {
        auto& [hits, total] = tally[item.stratum(axis)];
        hits += item.verdict;
        ++total;
    }
    std::map<std::string, double> out;
    for (const auto& [key, t] : tally) out[key] = 100.0 * t.first / t.second;
    return out;
}

MetricReport MetricReport::filtered(Stratifier axis, std::string_view value) const {
    MetricReport out;
    out.metric = metric;
    out.baseline = baseline;
    int hits = 0;
    for (const auto& item : items) {
        if (item.stratum(axis) == value) {
            out.items.push_back(item);
            hits += item.verdict;
        }
    }
    out.n_units = out.items.size();
    out.score = out.n_units ? 100.0 * hits / static_cast<double>(out.n_units) : 0.0;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<PromptRecord> rq2_only(std::vector<PromptRecord> prompts) {
    std::erase_if(prompts, [](const PromptRecord& p) { return p.corpus != Corpus::Rq2; });
    std::ranges::sort(prompts, [](const PromptRecord& a, const PromptRecord& b) { return a.id < b.id; });
    return prompts;
}

std::string level_text(double level) { return text::format_double(level); }

// Provenance key shared by all members of a unit, without the varying axis.
std::string base_key(const PromptRecord& p) {
    const auto& r = p.rq2();
    return std::string(to_string(p.mode)) + "/" + r.scenario + "/" + std::string(to_string(r.choice_set)) + "/" +
           r.numbers;
}

UnitVerdict make_unit(Metric metric, const PromptRecord& p, std::string detail) {
    const auto& r = p.rq2();
    UnitVerdict u;
    u.mode = p.mode;
    u.scenario = r.scenario;
    u.choice_set = r.choice_set;
    u.numbers = r.numbers;
    u.detail = std::move(detail);
    u.unit_id = std::string(to_string(metric)) + "/" + base_key(p) + "/" + u.detail;
    return u;
}

using SequenceMap = std::map<std::string, std::vector<const PromptRecord*>>;

// Groups prompts sharing (mode, scenario, choice set, numbers, interval),
// each group ordered by confidence level.
SequenceMap sequences(const std::vector<PromptRecord>& prompts) {
    SequenceMap out;
    for (const auto& p : prompts) {
        out[base_key(p) + "/" + std::string(to_string(p.rq2().interval))].push_back(&p);
    }
    for (auto& [key, seq] : out) {
        std::ranges::sort(seq, [](const PromptRecord* a, const PromptRecord* b) { return a->rq2().level < b->rq2().level; });
    }
    return out;
}

using PairMap = std::map<std::string, std::vector<const PromptRecord*>>;

PairMap complementary_pairs(const std::vector<PromptRecord>& prompts) {
    PairMap out;
    for (const auto& p : prompts) {
        const auto& r = p.rq2();
        out[base_key(p) + "/" + level_text(r.level) + "/" + std::to_string(complementary_pair_index(r.interval))]
            .push_back(&p);
    }
    for (auto& [key, pair] : out) {
        std::ranges::sort(pair, [](const PromptRecord* a, const PromptRecord* b) { return a->rq2().interval < b->rq2().interval; });
    }
    return out;
}

MetricReport finish(Metric metric, std::vector<UnitVerdict> items, double baseline) {
    std::ranges::sort(items, [](const UnitVerdict& a, const UnitVerdict& b) { return a.unit_id < b.unit_id; });
    MetricReport r;
    r.metric = metric;
    r.n_units = items.size();
    int hits = 0;
    for (const auto& i : items) hits += i.verdict;
    r.score = r.n_units ? 100.0 * hits / static_cast<double>(r.n_units) : 0.0;
    r.items = std::move(items);
    r.baseline = baseline;
    return r;
}

std::size_t set_size(const PromptRecord& p) { return choice_set(p.rq2().choice_set).size(); }

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

int sign(long v) { return (v > 0) - (v < 0); }

// Expected verdict of a uniform random respondent on each unit; drives the exact baseline.
struct UnitExpectation {
    std::vector<double> p;
    [[nodiscard]] double mean() const {
        if (p.empty()) return 0.0;
        double s = 0.0;
        for (double x : p) s += x;
        return s / static_cast<double>(p.size());
    }
};

UnitExpectation expectations(Metric metric, const std::vector<PromptRecord>& prompts) {
    UnitExpectation e;
    switch (metric) {
        case Metric::Pairwise:
            for (const auto& [key, pair] : complementary_pairs(prompts)) e.p.push_back(1.0 / static_cast<double>(set_size(*pair.front())));
            break;
        case Metric::Monotonicity:
            for (const auto& [key, seq] : sequences(prompts)) {
                const auto k = set_size(*seq.front());
                e.p.push_back(binomial(k + seq.size() - 1, seq.size()) / std::pow(static_cast<double>(k), static_cast<double>(seq.size())));
            }
            break;
        case Metric::Empirical:
            for (const auto& p : prompts) e.p.push_back(1.0 / static_cast<double>(set_size(p)));
            break;
        case Metric::EmpiricalMonotonicity:
            for (const auto& [key, seq] : sequences(prompts)) {
                const double k = static_cast<double>(set_size(*seq.front()));
                for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
                    const bool constant = empirical_ground_truth(*seq[i]) == empirical_ground_truth(*seq[i + 1]);
                    e.p.push_back(constant ? 1.0 / k : (k - 1.0) / (2.0 * k));
                }
            }
            break;
    }
    return e;
}

}  // namespace

// ---------------------------------------------------------------------------

ResponseSet::ResponseSet(std::vector<PromptRecord> prompts, const std::vector<ResponseRecord>& responses)
    : prompts_(rq2_only(std::move(prompts))) {
    std::map<std::string, const ResponseRecord*> by_id;
    for (const auto& r : responses) {
        if (!by_id.emplace(r.prompt_id, &r).second) throw DataError("duplicate response for prompt " + r.prompt_id);
    }
    std::vector<std::string> missing;
    for (const auto& p : prompts_) {
        auto it = by_id.find(p.id);
        if (it == by_id.end()) {
            missing.push_back(p.id);
            continue;
        }
        validate(*it->second, p);
        ranks_[p.id] = it->second->choice_rank();
    }
    if (!missing.empty()) {
        const std::size_t shown = std::min<std::size_t>(missing.size(), 10);
        std::vector<std::string> head(missing.begin(), missing.begin() + static_cast<std::ptrdiff_t>(shown));
        throw DataError(std::to_string(missing.size()) + " prompt(s) have no response: " + text::join(head, ", ") +
                        (missing.size() > shown ? ", ..." : ""));
    }
}

ResponseSet::ResponseSet(std::vector<PromptRecord> prompts, std::map<std::string, std::optional<std::size_t>> ranks)
    : prompts_(rq2_only(std::move(prompts))), ranks_(std::move(ranks)) {
    for (const auto& p : prompts_) {
        if (!ranks_.contains(p.id)) throw DataError("no answer for prompt " + p.id);
    }
}

std::optional<std::size_t> ResponseSet::rank(const std::string& prompt_id) const {
    auto it = ranks_.find(prompt_id);
    return it == ranks_.end() ? std::nullopt : it->second;
}

void check_corpus_coverage(const std::vector<PromptRecord>& prompts) {
    const auto rq2 = rq2_only(prompts);
    std::set<std::string> present;
    for (const auto& p : rq2) {
        present.insert(base_key(p) + "/" + level_text(p.rq2().level) + "/" + std::string(to_string(p.rq2().interval)));
    }
    std::set<std::string> missing;
    for (const auto& p : rq2) {
        const auto base = base_key(p);
        const auto& r = p.rq2();
        const auto partner = base + "/" + level_text(r.level) + "/" + std::string(to_string(complement(r.interval)));
        if (!present.contains(partner)) missing.insert(partner);
        for (double level : confidence_points()) {
            const auto member = base + "/" + level_text(level) + "/" + std::string(to_string(r.interval));
            if (!present.contains(member)) missing.insert(member);
        }
    }
    if (!missing.empty()) {
        std::vector<std::string> list(missing.begin(), missing.end());
        if (list.size() > 12) {
            list.resize(12);
            list.emplace_back("...");
        }
        throw DataError("incomplete RQ2 corpus; missing " + std::to_string(missing.size()) +
                        " provenance key(s): " + text::join(list, ", "));
    }
}

MetricReport pairwise_consistency(const ResponseSet& responses) {
    check_corpus_coverage(responses.prompts());
    std::vector<UnitVerdict> items;
    const auto pairs = complementary_pairs(responses.prompts());
    for (const auto& [key, pair] : pairs) {
        const auto& first = *pair[0];
        const auto& second = *pair[1];
        auto u = make_unit(Metric::Pairwise, first,
                           "level=" + level_text(first.rq2().level) + "/pair=" + std::string(to_string(first.rq2().interval)) +
                               "+" + std::string(to_string(second.rq2().interval)));
        u.prompt_ids = {first.id, second.id};
        const auto a = responses.rank(first.id);
        const auto b = responses.rank(second.id);
        const auto& set = choice_set(first.rq2().choice_set);
        u.verdict = (a && b && *b == complementary_choice(*a, set)) ? 1 : 0;
        items.push_back(std::move(u));
    }
    return finish(Metric::Pairwise, std::move(items), 100.0 * expectations(Metric::Pairwise, responses.prompts()).mean());
}

MetricReport monotonicity_consistency(const ResponseSet& responses) {
    check_corpus_coverage(responses.prompts());
    std::vector<UnitVerdict> items;
    for (const auto& [key, seq] : sequences(responses.prompts())) {
        const auto& head = *seq.front();
        auto u = make_unit(Metric::Monotonicity, head, "interval=" + std::string(to_string(head.rq2().interval)));
        std::vector<std::size_t> ranks;
        bool failed = false;
        for (const auto* p : seq) {
            u.prompt_ids.push_back(p->id);
            if (auto r = responses.rank(p->id)) {
                ranks.push_back(*r);
            } else {
                failed = true;
            }
        }
        // Rank 0 is the most likely choice, so a decreasing probability means non-decreasing ranks.
        bool ok = !failed;
        if (ok) {
            const bool probability_decreases = direction_under_widening(head.rq2().interval) == Direction::Decreasing;
            for (std::size_t i = 0; i + 1 < ranks.size(); ++i) {
                if (probability_decreases ? ranks[i + 1] < ranks[i] : ranks[i + 1] > ranks[i]) ok = false;
            }
        }
        u.verdict = ok ? 1 : 0;
        items.push_back(std::move(u));
    }
    return finish(Metric::Monotonicity, std::move(items),
                  100.0 * expectations(Metric::Monotonicity, responses.prompts()).mean());
}

MetricReport empirical_consistency(const ResponseSet& responses) {
    check_corpus_coverage(responses.prompts());
    std::vector<UnitVerdict> items;
    for (const auto& p : responses.prompts()) {
        auto u = make_unit(Metric::Empirical, p,
                           "level=" + level_text(p.rq2().level) + "/interval=" + std::string(to_string(p.rq2().interval)));
        u.prompt_ids = {p.id};
        const auto r = responses.rank(p.id);
        u.verdict = (r && *r == empirical_ground_truth(p)) ? 1 : 0;
        items.push_back(std::move(u));
    }
    return finish(Metric::Empirical, std::move(items), 100.0 * expectations(Metric::Empirical, responses.prompts()).mean());
}

MetricReport empirical_monotonicity_consistency(const ResponseSet& responses) {
    check_corpus_coverage(responses.prompts());
    std::vector<UnitVerdict> items;
    for (const auto& [key, seq] : sequences(responses.prompts())) {
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            const auto& a = *seq[i];
            const auto& b = *seq[i + 1];
            auto u = make_unit(Metric::EmpiricalMonotonicity, a,
                               "interval=" + std::string(to_string(a.rq2().interval)) + "/levels=" +
                                   level_text(a.rq2().level) + "-" + level_text(b.rq2().level));
            u.prompt_ids = {a.id, b.id};
            const auto ra = responses.rank(a.id);
            const auto rb = responses.rank(b.id);
            const long truth = static_cast<long>(empirical_ground_truth(b)) - static_cast<long>(empirical_ground_truth(a));
            u.verdict = (ra && rb && sign(static_cast<long>(*rb) - static_cast<long>(*ra)) == sign(truth)) ? 1 : 0;
            items.push_back(std::move(u));
        }
    }
    return finish(Metric::EmpiricalMonotonicity, std::move(items),
                  100.0 * expectations(Metric::EmpiricalMonotonicity, responses.prompts()).mean());
}

MetricReport score_metric(Metric metric, const ResponseSet& responses) {
    switch (metric) {
        case Metric::Pairwise: return pairwise_consistency(responses);
        case Metric::Monotonicity: return monotonicity_consistency(responses);
        case Metric::Empirical: return empirical_consistency(responses);
        case Metric::EmpiricalMonotonicity: return empirical_monotonicity_consistency(responses);
    }
    return {};
}

double exact_baseline(Metric metric, std::size_t choices) {
    if (choices == 0) throw ConfigError("choice set must not be empty");
    const double k = static_cast<double>(choices);
    switch (metric) {
        case Metric::Pairwise:
        case Metric::Empirical:
            return 100.0 / k;
        case Metric::Monotonicity:
            return 100.0 * binomial(choices + 4, 5) / std::pow(k, 5.0);
        case Metric::EmpiricalMonotonicity:
            break;
    }
    throw ConfigError("the empirical-monotonicity baseline depends on the corpus ground truths");
}

BaselineEstimate random_baseline(Metric metric, const std::vector<PromptRecord>& corpus, BaselineMethod method,
                                 std::uint64_t seed, std::size_t replications) {
    const auto prompts = rq2_only(corpus);
    check_corpus_coverage(prompts);
    const auto expected = expectations(metric, prompts);
    BaselineEstimate est;
    double variance = 0.0;
    for (double p : expected.p) variance += p * (1.0 - p);
    const double n = static_cast<double>(expected.p.size());
    if (method == BaselineMethod::Exact) {
        est.score = 100.0 * expected.mean();
        est.standard_error = n > 0 ? 100.0 * std::sqrt(variance) / n : 0.0;
        return est;
    }
    if (replications == 0) throw ConfigError("Monte-Carlo baseline needs at least one replication");
    for (std::size_t rep = 0; rep < replications; ++rep) {
        std::mt19937_64 engine(seed * 0x9E3779B97F4A7C15ULL + rep);
        std::map<std::string, std::optional<std::size_t>> ranks;
        for (const auto& p : prompts) {
            const auto k = set_size(p);
            const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
            ranks[p.id] = std::min(static_cast<std::size_t>(u * static_cast<double>(k)), k - 1);
        }
        est.replications.push_back(score_metric(metric, ResponseSet(prompts, std::move(ranks))).score);
    }
    double total = 0.0;
    for (double s : est.replications) total += s;
    est.score = total / static_cast<double>(replications);
    est.standard_error = n > 0 ? 100.0 * std::sqrt(variance) / n / std::sqrt(static_cast<double>(replications)) : 0.0;
    return est;
}

stats::TestResult compare_reports(const MetricReport& a, const MetricReport& b, Stratifier axis) {
    std::map<std::string, int> right;
    for (const auto& item : b.items) right[item.key_without(axis)] = item.verdict;
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& item : a.items) {
        auto it = right.find(item.key_without(axis));
        if (it == right.end()) continue;
        x.push_back(item.verdict);
        y.push_back(it->second);
    }
    if (x.empty()) throw DataError("no units match between the two reports");
    return stats::paired_t_test(x, y);
}

}  // namespace wepkit
