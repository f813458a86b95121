// Acceptance checks: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include "wepkit/gateway.hpp"
#include "wepkit/metrics.hpp"
#include "wepkit/report.hpp"
#include "wepkit/rq1.hpp"
#include "wepkit/rq2.hpp"
#include "wepkit/stats.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace wepkit;

namespace {

struct Check {
    bool ok = true;
    std::vector<std::string> failures;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            failures.push_back(what);
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << v;
    return s.str();
}

std::vector<ResponseRecord> run_mock(const std::vector<PromptRecord>& corpus, MockSpec spec) {
    MockRespondent mock(std::move(spec));
    ResponseCache cache;
    TranscriptLog log;
    return Gateway(mock, cache, log).run_batch(corpus).responses;
}

// 1. Corpus combinatorics.
Check corpus_combinatorics(std::string& detail) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const auto corpus = generate_rq2_corpus(Mode::Standard);
    std::map<std::string, std::optional<std::size_t>> ranks;
    for (const auto& p : corpus) ranks[p.id] = 0;
    const ResponseSet rs(corpus, ranks);
    const auto pw = pairwise_consistency(rs).n_units;
    const auto mono = monotonicity_consistency(rs).n_units;
    const auto emp = empirical_consistency(rs).n_units;
    const auto emono = empirical_monotonicity_consistency(rs).n_units;
    const double elapsed = seconds_since(t0);
    c.expect(corpus.size() == 360, "prompts " + std::to_string(corpus.size()));
    c.expect(pw == 180, "pairwise units " + std::to_string(pw));
    c.expect(mono == 72, "monotonicity units " + std::to_string(mono));
    c.expect(emp == 360, "empirical units " + std::to_string(emp));
    c.expect(emono == 288, "empirical monotonicity units " + std::to_string(emono));
    c.expect(elapsed < 1.0, "runtime " + fmt(elapsed) + " s");
    detail = "360 prompts; units 180/72/360/288; " + fmt(elapsed) + " s";
    return c;
}

// 2. Worked example.
Check worked_example(std::string& detail) {
    Check c;
    const std::string expected =
        "Complete the following sentence using one of the choices, listed in descending order of likelihood, that "
        "best fits the sentence: A.is almost certainly B.is likely to be C.is maybe D.is unlikely to be E.is almost "
        "certainly not. I randomly picked 20 specimens from an unknown population. I recorded their heights, which "
        "are 116, 93, 94, 89, 108, 76, 117, 92, 103, 97, 114, 79, 96, 96, 111, 89, 98, 91, 100, 105. Based on this "
        "information, if I randomly pick one additional specimen from the same population, the specimen's height _ "
        "below 99.";
    const auto corpus = generate_rq2_corpus(Mode::Standard);
    const PromptRecord* found = nullptr;
    for (const auto& p : corpus) {
        const auto& r = p.rq2();
        if (r.scenario == "height" && r.choice_set == ChoiceSetId::FiveChoices && r.numbers == "narrow" &&
            r.interval == IntervalKind::BelowLow && r.level == 0.05) {
            found = &p;
        }
    }
    c.expect(found != nullptr, "prompt not generated");
    if (!found) return c;
    c.expect(found->body == expected, "body differs from the reference text");
    const double share = empirical_proportion(*found);
    const auto& phrase = choice_set(ChoiceSetId::FiveChoices).by_rank(empirical_ground_truth(*found)).phrase;
    c.expect(share == 0.6, "proportion " + fmt(share));
    c.expect(phrase == "is maybe", "ground truth '" + phrase + "'");
    detail = "exact text match; proportion " + fmt(share, 1) + " -> \"" + phrase + "\"";
    return c;
}

// 3. Template registry.
Check template_registry(std::string& detail) {
    Check c;
    const auto& reg = TemplateRegistry::builtin();
    auto count = [&](Setting s, Language l) { return reg.select(s, l).size(); };
    auto mean_len = [&](Setting s) {
        const auto ts = reg.select(s, Language::English);
        double total = 0.0;
        for (const auto& t : ts) total += static_cast<double>(template_word_length(t));
        return total / static_cast<double>(ts.size());
    };
    c.expect(count(Setting::CNC, Language::English) == 15, "CNC count");
    c.expect(count(Setting::ENC, Language::English) == 11, "ENC count");
    c.expect(count(Setting::FCNC, Language::English) == 10, "FCNC count");
    c.expect(count(Setting::MCNC, Language::English) == 10, "MCNC count");
    c.expect(count(Setting::CNC, Language::Chinese) == 15, "Chinese CNC count");
    const double cnc = mean_len(Setting::CNC), enc = mean_len(Setting::ENC), fcnc = mean_len(Setting::FCNC),
                 mcnc = mean_len(Setting::MCNC);
    c.expect(std::abs(cnc - 7.1) <= 0.5, "CNC mean length " + fmt(cnc, 2));
    c.expect(std::abs(enc - 24.3) <= 0.5, "ENC mean length " + fmt(enc, 2));
    c.expect(std::abs(fcnc - 8.6) <= 0.5, "FCNC mean length " + fmt(fcnc, 2));
    c.expect(std::abs(mcnc - 8.6) <= 0.5, "MCNC mean length " + fmt(mcnc, 2));
    detail = "15/11/10/10 English + 15 Chinese; mean words " + fmt(cnc, 2) + "/" + fmt(enc, 2) + "/" + fmt(fcnc, 2);
    return c;
}

// 4. Random baselines: closed forms against enumeration; Monte-Carlo within 3 SE.
Check random_baselines(std::string& detail) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t k : {5u, 3u}) {
        // Enumerate all k^5 answer sequences and count the non-increasing-probability ones.
        std::size_t mono = 0, total = 0;
        std::vector<std::size_t> seq(5, 0);
        while (true) {
            ++total;
            bool sorted = true;
            for (std::size_t i = 0; i + 1 < 5; ++i) sorted = sorted && seq[i] <= seq[i + 1];
            mono += sorted ? 1 : 0;
            std::size_t i = 5;
            while (i > 0 && ++seq[i - 1] == k) seq[--i] = 0;
            if (i == 0) break;
        }
        std::size_t pairs = 0;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) pairs += (b == k - 1 - a) ? 1 : 0;
        }
        const double enum_mono = 100.0 * static_cast<double>(mono) / static_cast<double>(total);
        const double enum_pair = 100.0 * static_cast<double>(pairs) / static_cast<double>(k * k);
        c.expect(std::abs(exact_baseline(Metric::Monotonicity, k) - enum_mono) < 1e-9, "monotonicity closed form");
        c.expect(std::abs(exact_baseline(Metric::Pairwise, k) - enum_pair) < 1e-9, "pairwise closed form");
    }
    c.expect(std::abs(exact_baseline(Metric::Pairwise, 5) - 20.0) < 0.005, "pairwise 5");
    c.expect(std::abs(exact_baseline(Metric::Pairwise, 3) - 33.33) < 0.005, "pairwise 3");
    c.expect(std::abs(exact_baseline(Metric::Monotonicity, 5) - 100.0 * 126 / 3125) < 1e-9, "monotonicity 5");
    c.expect(std::abs(exact_baseline(Metric::Monotonicity, 5) - 4.032) < 0.0005, "monotonicity 5 rounded");
    c.expect(std::abs(exact_baseline(Metric::Monotonicity, 3) - 100.0 * 21 / 243) < 1e-9, "monotonicity 3");
    c.expect(std::abs(exact_baseline(Metric::Monotonicity, 3) - 8.642) < 0.0005, "monotonicity 3 rounded");

    const auto corpus = generate_rq2_corpus(Mode::Standard);
    double worst = 0.0;
    for (auto id : {ChoiceSetId::FiveChoices, ChoiceSetId::ThreeChoices}) {
        std::vector<PromptRecord> subset;
        for (const auto& p : corpus) {
            if (p.rq2().choice_set == id) subset.push_back(p);
        }
        for (auto m : {Metric::Pairwise, Metric::Monotonicity}) {
            const double target = exact_baseline(m, choice_set(id).size());
            const auto mc = random_baseline(m, subset, BaselineMethod::MonteCarlo);
            const double z = std::abs(mc.score - target) / mc.standard_error;
            worst = std::max(worst, z);
            c.expect(mc.replications.size() == kBaselineReplications, "replication count");
            c.expect(z <= 3.0, std::string(to_string(m)) + "/" + std::string(to_string(id)) + " Monte-Carlo " +
                                   fmt(mc.score) + " vs " + fmt(target) + " (" + fmt(z, 2) + " SE)");
        }
    }
    const double elapsed = seconds_since(t0);
    c.expect(elapsed < 10.0, "runtime " + fmt(elapsed) + " s");
    detail = "20.00/33.33 and 4.032/8.642 by enumeration; Monte-Carlo worst " + fmt(worst, 2) + " SE; " +
             fmt(elapsed, 2) + " s";
    return c;
}

// 5. Oracle mocks.
Check oracle_fixtures(std::string& detail) {
    Check c;
    const auto corpus = generate_rq2_corpus(Mode::Standard);
    auto scores = [&](MockSpec spec) {
        const ResponseSet rs(corpus, run_mock(corpus, std::move(spec)));
        std::map<Metric, double> out;
        for (auto m : kAllMetrics) out[m] = score_metric(m, rs).score;
        return out;
    };
    const auto calibrated = scores(MockSpec{.kind = MockKind::SampleCalibrated});
    const auto maybe = scores(MockSpec{.kind = MockKind::ConstantChoice, .choice = "is maybe"});
    c.expect(calibrated.at(Metric::Empirical) == 100.0, "calibrated empirical " + fmt(calibrated.at(Metric::Empirical)));
    c.expect(calibrated.at(Metric::EmpiricalMonotonicity) == 100.0,
             "calibrated empirical monotonicity " + fmt(calibrated.at(Metric::EmpiricalMonotonicity)));
    c.expect(maybe.at(Metric::Pairwise) == 100.0, "maybe pairwise " + fmt(maybe.at(Metric::Pairwise)));
    c.expect(maybe.at(Metric::Monotonicity) == 100.0, "maybe monotonicity " + fmt(maybe.at(Metric::Monotonicity)));
    // Ground-truth oracle: prompts whose empirical answer is "is maybe".
    std::size_t hits = 0;
    for (const auto& p : corpus) {
        hits += choice_set(p.rq2().choice_set).by_rank(empirical_ground_truth(p)).phrase == "is maybe" ? 1 : 0;
    }
    const double oracle = 100.0 * static_cast<double>(hits) / static_cast<double>(corpus.size());
    constexpr double kFrozenMaybeEmpirical = 100.0 * 60 / 360;
    c.expect(maybe.at(Metric::Empirical) < 60.0, "maybe empirical not below 60");
    c.expect(std::abs(maybe.at(Metric::Empirical) - oracle) < 1e-9, "maybe empirical differs from the oracle");
    c.expect(std::abs(maybe.at(Metric::Empirical) - kFrozenMaybeEmpirical) < 1e-9, "maybe empirical regression");
    detail = "calibrated 100/100; maybe 100/100 and empirical " + fmt(maybe.at(Metric::Empirical), 2) + " (oracle " +
             std::to_string(hits) + "/360)";
    return c;
}

// 6. Statistics.
Check statistics(std::string& detail) {
    Check c;
    std::mt19937_64 rng(20240613);
    std::size_t cases = 0;
    for (int rep = 0; rep < 16; ++rep) {
        for (std::size_t n1 = 1; n1 <= 8; ++n1) {
            for (std::size_t n2 = 1; n2 <= 8; ++n2) {
                std::uniform_int_distribution<int> d(0, 5);
                std::vector<double> a(n1), b(n2);
                for (auto& x : a) x = d(rng);
                for (auto& x : b) x = d(rng);
                double ua = 0.0;
                for (double x : a) {
                    for (double y : b) ua += x > y ? 1.0 : x == y ? 0.5 : 0.0;
                }
                const double expected = std::min(ua, static_cast<double>(n1 * n2) - ua);
                const auto r = stats::mann_whitney_u(a, b);
                if (std::abs(r.statistic - expected) > 1e-9) c.expect(false, "U mismatch");
                ++cases;
            }
        }
    }
    c.expect(cases >= 1000, "only " + std::to_string(cases) + " cases");

    const std::vector<double> sample{3, 17, 42, 42, 58, 77, 91, 100, 0, 65};
    const auto p = stats::bin_distribution(sample);
    const double kl = stats::kl_divergence(p, p);
    c.expect(std::abs(kl) <= 1e-9, "KL(P,P) = " + std::to_string(kl));
    c.expect(stats::ks_statistic(sample, sample) == 0.0, "KS identical");
    const std::vector<double> low{1, 2, 3}, high{50, 60, 70, 80};
    c.expect(stats::ks_statistic(low, high) == 1.0, "KS disjoint");
    const double rbc = stats::rank_biserial_from_u(506.5, 123, 15);
    c.expect(std::abs(rbc - 0.451) <= 0.001, "RBC " + fmt(rbc, 4));
    c.expect(std::abs(rbc - 0.45) < 0.005, "RBC does not round to 0.45");
    detail = std::to_string(cases) + " U cases; KL(P,P)=" + fmt(kl, 12) + "; KS 0/1; RBC " + fmt(rbc, 4);
    return c;
}

// 7. Report shape on mock respondents and the synthetic survey.
Check report_shape(std::string& detail) {
    Check c;
    const auto survey = load_survey(std::filesystem::path(WEPKIT_TEST_DATA) / "synthetic_survey.csv");
    BundleInputs in;
    in.survey = survey;
    Rq1Config english;
    in.rq1_prompts = generate_rq1_corpus(english);
    Rq1Config chinese;
    chinese.settings = {Setting::CNC};
    chinese.languages = {Language::Chinese};
    const auto zh = generate_rq1_corpus(chinese);
    in.rq1_prompts.insert(in.rq1_prompts.end(), zh.begin(), zh.end());
    in.rq1.push_back({"mock-random", run_mock(in.rq1_prompts, MockSpec{.kind = MockKind::UniformRandom, .seed = 3})});
    in.rq1.push_back({"mock-median", run_mock(in.rq1_prompts, MockSpec{.kind = MockKind::SurveyMedian,
                                                                        .survey = std::make_shared<SurveyTable>(survey)})});
    in.rq2_prompts = generate_rq2_corpus(Mode::Standard);
    const auto cot = generate_rq2_corpus(Mode::Cot);
    in.rq2_prompts.insert(in.rq2_prompts.end(), cot.begin(), cot.end());
    in.rq2_responses = run_mock(in.rq2_prompts, MockSpec{.kind = MockKind::GaussianCalibrated});
    in.compare.resamples = 500;

    const auto dir = std::filesystem::temp_directory_path() / "wepkit-acceptance-report";
    std::filesystem::remove_all(dir);
    const auto manifest = write_report_bundle(in, dir);
    const auto& figures = manifest["figures"];
    c.expect(figures.size() == 6, "figure count " + std::to_string(figures.size()));
    std::size_t ok = 0;
    for (const auto& f : figures) {
        const auto id = f.value("id", std::string("?"));
        if (f.value("status", "") != "ok") {
            c.expect(false, id + " skipped");
            continue;
        }
        ++ok;
        std::ifstream svg(dir / f["svg"].get<std::string>());
        std::stringstream s;
        s << svg.rdbuf();
        c.expect(s.str().starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""), id + " is not an SVG");
        for (const auto& t : f["tables"]) {
            c.expect(std::filesystem::exists(dir / t.get<std::string>()), id + " table missing");
        }
    }
    // Comparison tables carry the per-WEP statistics and stars.
    for (const char* id : {"fig1", "fig2", "fig3", "fig4"}) {
        std::ifstream in_json(dir / (std::string(id) + ".json"));
        const auto j = nlohmann::json::parse(in_json, nullptr, false);
        c.expect(j.is_array() && !j.empty(), std::string(id) + ".json is empty");
        if (!j.is_array() || j.empty()) continue;
        const auto& row = j[0]["rows"][0];
        for (const char* key : {"wep", "median_a", "median_b", "amd", "u", "p_value", "rank_biserial", "ks", "kl",
                                "stars"}) {
            c.expect(row.contains(key), std::string(id) + " rows lack " + key);
        }
    }
    std::ifstream scores_in(dir / "scores.json");
    const auto scores = nlohmann::json::parse(scores_in, nullptr, false);
    for (const char* key : {"modes", "pooled", "baselines", "standard_vs_cot", "five_vs_three_choices"}) {
        c.expect(scores.contains(key), std::string("scores.json lacks ") + key);
    }
    c.expect(manifest.contains("stars") && manifest.contains("units"), "manifest lacks legend");
    detail = std::to_string(ok) + "/6 figures with SVG and tables (values not asserted)";
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check(std::string&)>>> criteria{
        {"1 corpus combinatorics", corpus_combinatorics},
        {"2 worked example", worked_example},
        {"3 template registry", template_registry},
        {"4 random baselines", random_baselines},
        {"5 oracle fixtures", oracle_fixtures},
        {"6 statistics", statistics},
        {"7 report shape", report_shape},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        std::string detail;
        Check result;
        try {
            result = run(detail);
        } catch (const std::exception& e) {
            result.expect(false, std::string("exception: ") + e.what());
        }
        if (result.ok) {
            std::cout << "PASS " << name << ": " << detail << "\n";
        } else {
            ++failed;
            std::cout << "FAIL " << name << ":";
            for (const auto& f : result.failures) std::cout << " [" << f << "]";
            std::cout << "\n";
        }
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
    return failed ? 1 : 0;
}
