#pragma once

#include "wepkit/metrics.hpp"
#include "wepkit/records.hpp"
#include "wepkit/stats.hpp"
#include "wepkit/survey.hpp"
#include "wepkit/svg.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wepkit {

// ---------------------------------------------------------------------------
// Estimative comparisons

/// Per-WEP probability samples in percent, plus how many responses per WEP
/// failed to parse.
struct DistributionSource {
    std::string label;
    std::map<std::string, std::vector<double>> values;
    std::map<std::string, std::size_t> failures;

    [[nodiscard]] const std::vector<double>& samples(const std::string& wep) const;
};

DistributionSource source_from_survey(const std::string& label, const SurveyTable& table);

using PromptFilter = std::function<bool(const PromptRecord&)>;

/// Model answers are fractions; they are scaled to percent here. Responses
/// without a matching RQ1 prompt raise DataError.
DistributionSource source_from_responses(const std::string& label, const std::vector<PromptRecord>& prompts,
                                         const std::vector<ResponseRecord>& responses,
                                         const PromptFilter& filter = {});

struct ComparisonRow {
    std::string wep;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    std::size_t failures_a = 0;
    std::size_t failures_b = 0;
    bool flagged = false;  // one side has no parsed values; statistics are absent
    std::string note;
    std::optional<double> median_a;
    std::optional<double> median_b;
    std::optional<double> amd;
    std::optional<double> u;
    std::optional<double> p_value;
    std::optional<double> rbc;         // magnitude
    std::optional<double> rbc_signed;  // positive when a tends to be larger
    std::optional<double> rbc_ci_low;
    std::optional<double> rbc_ci_high;
    std::optional<double> ks;
    std::optional<double> kl;  // KL(a || b), nats
    std::string stars;
};

struct ComparisonOptions {
    std::size_t resamples = stats::kDefaultBootstrapResamples;
    std::uint64_t seed = stats::kDefaultBootstrapSeed;
    bool exact_p = false;  // only used where n1 * n2 <= 400
};

struct Comparison {
    std::string label_a;
    std::string label_b;
    std::vector<ComparisonRow> rows;  // one per WEP in registry order
};

Comparison compare_sources(const DistributionSource& a, const DistributionSource& b,
                           const ComparisonOptions& options = {});

nlohmann::json to_json(const Comparison& c);
std::string comparison_csv(const Comparison& c);

/// KL heat map: one row per WEP, one column per comparison, stars from the
/// Mann-Whitney p-value.
svg::HeatMap kl_heat_map(const std::vector<Comparison>& comparisons, const std::string& title);

/// Box plot of each source per WEP.
std::string distribution_box_plot(const std::vector<DistributionSource>& sources, const std::string& title);

// ---------------------------------------------------------------------------
// Choice consistency

struct ModeScores {
    Mode mode = Mode::Standard;
    std::map<Metric, MetricReport> reports;
    std::size_t parse_failures = 0;
};

/// Paired t-test of unit verdicts between the two values of `compared`
/// (standard vs cot, or five vs three choices), within one stratum.
struct PairedTest {
    Metric metric = Metric::Pairwise;
    Stratifier compared = Stratifier::Mode;
    std::string axis = "all";     // stratifier name of the stratum, or "all"
    std::string stratum = "all";
    std::optional<stats::TestResult> test;
    std::string note;  // why the test is absent
};

struct ScoreReport {
    std::vector<ModeScores> modes;                  // modes present in the corpus
    std::map<Metric, MetricReport> pooled;          // all modes together
    std::map<Metric, BaselineEstimate> baselines;   // Monte-Carlo protocol
    std::map<Metric, BaselineEstimate> exact;       // expectation over the corpus
    std::vector<PairedTest> mode_tests;             // standard vs cot per scenario, when both present
    std::vector<PairedTest> choice_set_tests;       // five vs three choices per numbers range
};

struct ScoreOptions {
    std::uint64_t baseline_seed = kDefaultBaselineSeed;
    std::size_t replications = kBaselineReplications;
};

/// Scores every mode present in `prompts`. Coverage is checked first and
/// incomplete corpora raise DataError listing the missing keys.
ScoreReport build_score_report(const std::vector<PromptRecord>& prompts, const std::vector<ResponseRecord>& responses,
                               const ScoreOptions& options = {});

nlohmann::json to_json(const MetricReport& r);
nlohmann::json to_json(const ScoreReport& r);
/// Header: metric,unit_id,mode,scenario,choice_set,numbers,detail,verdict,prompt_ids
std::string verdict_csv(const ScoreReport& r);
/// Header: metric,mode,axis,stratum,score,n_units,baseline
std::string score_table_csv(const ScoreReport& r);

/// One panel per metric, scenarios on the x axis, one bar per mode.
std::vector<svg::BarPanel> scenario_panels(const ScoreReport& r);
/// One panel per metric, numbers ranges on the x axis, one bar per choice set
/// (modes pooled).
std::vector<svg::BarPanel> choice_set_panels(const ScoreReport& r);

// ---------------------------------------------------------------------------
// Report bundle

enum class SplitBy { None, Setting, Language };
SplitBy parse_split(std::string_view s);

/// One source per setting ("label/CNC") or language ("label/Chinese"), or a
/// single pooled source.
std::vector<DistributionSource> split_sources(const std::string& label, const std::vector<PromptRecord>& prompts,
                                              const std::vector<ResponseRecord>& responses, SplitBy split);

struct LabelledResponses {
    std::string label;
    std::vector<ResponseRecord> responses;
};

struct BundleInputs {
    std::optional<SurveyTable> survey;
    std::string survey_label = "human";
    std::vector<PromptRecord> rq1_prompts;
    std::vector<LabelledResponses> rq1;  // one entry per model
    std::vector<PromptRecord> rq2_prompts;
    std::vector<ResponseRecord> rq2_responses;
    ComparisonOptions compare;
    ScoreOptions score;
};

/// Writes six figures with their tables into `dir` and returns the manifest
/// (also written as manifest.json). Figures whose inputs are absent are
/// listed as skipped with a reason.
nlohmann::json write_report_bundle(const BundleInputs& inputs, const std::filesystem::path& dir);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace wepkit
