#pragma once

#include "wepkit/records.hpp"
#include "wepkit/stats.hpp"

#include <cstdint>
#include <map>
#include <optional>

namespace wepkit {

enum class Metric { Pairwise, Monotonicity, Empirical, EmpiricalMonotonicity };
inline constexpr std::array kAllMetrics{Metric::Pairwise, Metric::Monotonicity, Metric::Empirical,
                                        Metric::EmpiricalMonotonicity};
std::string_view to_string(Metric m);
Metric parse_metric(std::string_view s);

enum class Stratifier { Scenario, ChoiceSet, Numbers, Mode };
std::string_view to_string(Stratifier s);

/// One scored unit: a prompt, a complementary pair, a 5-level sequence or a
/// consecutive-level pair, identified by provenance rather than position.
struct UnitVerdict {
    std::string unit_id;
    int verdict = 0;
    Mode mode = Mode::Standard;
    std::string scenario;
    ChoiceSetId choice_set = ChoiceSetId::FiveChoices;
    std::string numbers;
    std::string detail;  // level / interval part of the key
    std::vector<std::string> prompt_ids;

    /// Key with one axis removed, for pairing units across that axis.
    [[nodiscard]] std::string key_without(Stratifier axis) const;
    [[nodiscard]] std::string stratum(Stratifier axis) const;
};

struct MetricReport {
    Metric metric = Metric::Pairwise;
    std::vector<UnitVerdict> items;  // sorted by unit_id
    double score = 0.0;              // percent
    std::size_t n_units = 0;
    double baseline = 0.0;           // exact random baseline, percent

    /// Score per stratum value (e.g. per scenario).
    [[nodiscard]] std::map<std::string, double> stratified(Stratifier axis) const;
    /// Items belonging to one stratum value.
    [[nodiscard]] MetricReport filtered(Stratifier axis, std::string_view value) const;
};

/// Prompts joined with their responses. Every RQ2 prompt must have exactly one
/// response; otherwise construction throws DataError listing the missing keys.
class ResponseSet {
public:
    ResponseSet(std::vector<PromptRecord> prompts, const std::vector<ResponseRecord>& responses);
    /// Prompts plus explicit choice ranks (nullopt = failed parse); used by baselines.
    ResponseSet(std::vector<PromptRecord> prompts, std::map<std::string, std::optional<std::size_t>> ranks);

    [[nodiscard]] const std::vector<PromptRecord>& prompts() const { return prompts_; }
    [[nodiscard]] std::optional<std::size_t> rank(const std::string& prompt_id) const;

private:
    std::vector<PromptRecord> prompts_;  // RQ2 only, sorted by id
    std::map<std::string, std::optional<std::size_t>> ranks_;
};

MetricReport pairwise_consistency(const ResponseSet& responses);
MetricReport monotonicity_consistency(const ResponseSet& responses);
MetricReport empirical_consistency(const ResponseSet& responses);
MetricReport empirical_monotonicity_consistency(const ResponseSet& responses);
MetricReport score_metric(Metric metric, const ResponseSet& responses);

/// Throws DataError listing provenance keys whose pair / sequence is incomplete.
void check_corpus_coverage(const std::vector<PromptRecord>& prompts);

enum class BaselineMethod { MonteCarlo, Exact };

struct BaselineEstimate {
    double score = 0.0;                 // percent
    std::vector<double> replications;   // Monte-Carlo only
    double standard_error = 0.0;        // of the Monte-Carlo mean, from the exact per-unit variances
};

inline constexpr std::size_t kBaselineReplications = 10;
inline constexpr std::uint64_t kDefaultBaselineSeed = 7;

/// Expected score of a respondent that picks uniformly among the choices.
BaselineEstimate random_baseline(Metric metric, const std::vector<PromptRecord>& corpus, BaselineMethod method,
                                 std::uint64_t seed = kDefaultBaselineSeed,
                                 std::size_t replications = kBaselineReplications);

/// Closed forms for a single choice-set size: pairwise 1/k, monotonicity
/// C(k+4, 5)/k^5, empirical 1/k (percent).
double exact_baseline(Metric metric, std::size_t choices);

/// Paired t-test of unit verdicts between two reports, units matched on all
/// provenance axes except `axis`.
stats::TestResult compare_reports(const MetricReport& a, const MetricReport& b, Stratifier axis);

}  // namespace wepkit
