#pragma once

#include "wepkit/records.hpp"

#include <cstdint>
#include <filesystem>

namespace wepkit {

inline constexpr double kNumbersMean = 100.0;
inline constexpr std::size_t kSampleSize = 20;

enum class NumbersId { Narrow, Wide };
std::string_view to_string(NumbersId id);
NumbersId parse_numbers_id(std::string_view s);
/// 10 for narrow, 40 for wide.
double std_dev_of(NumbersId id);

struct EmpiricalSample {
    std::string id;  // "narrow", "wide", or "narrow@<seed>" for fresh draws
    NumbersId kind = NumbersId::Narrow;
    double mean = kNumbersMean;
    double std_dev = 10.0;
    std::int64_t seed = 0;
    std::vector<int> observations;
};

/// 20 draws from N(100, sigma) rounded half away from zero. Uses a
/// Box-Muller transform over mt19937_64 so results are identical across
/// standard library implementations.
EmpiricalSample sample_numbers(NumbersId id, std::int64_t seed);

/// The frozen NUMBERS sets shipped under data/numbers/.
EmpiricalSample numbers_fixture(NumbersId id, const std::filesystem::path& data_dir = {});
std::vector<EmpiricalSample> parse_numbers_table(std::istream& in, const std::string& source_name);

struct CutPoints {
    double level = 0.05;
    int low = 0;
    int high = 0;
    double p_below_low = 0.0;
    double p_below_high = 0.0;
};

CutPoints compute_cut_points(double mean, double std_dev, double level);

/// "below 99", "between 80 and 120", ...
std::string render_interval(IntervalKind kind, const CutPoints& cuts);
std::string render_interval(IntervalKind kind, int low, int high);

/// Strict inequalities: a value equal to a cut point lies outside every interval.
bool interval_contains(IntervalKind kind, int low, int high, double x);

/// Share of `observations` strictly inside the interval.
double empirical_proportion(IntervalKind kind, int low, int high, std::span<const int> observations);

/// Probability of the interval under N(mean, sd).
double gaussian_interval_probability(IntervalKind kind, int low, int high, double mean, double sd);

struct ScenarioTemplate {
    std::string id;  // height | score | sound
    std::string preamble;  // contains "{numbers}"
    std::string sentence_frame;  // contains "_" blank and "{interval}"
};

const std::vector<ScenarioTemplate>& scenario_templates();
const ScenarioTemplate& find_scenario(std::string_view id);

inline constexpr std::string_view kRq2Lead =
    "Complete the following sentence using one of the choices, listed in descending order of likelihood, that "
    "best fits the sentence: ";
inline constexpr std::string_view kRq2CotLead =
    "First compute the associated probability. Then complete the following sentence using one of the choices, "
    "listed in descending order of likelihood, that best fits the sentence: ";
inline constexpr std::string_view kRq2CotTail = "Give your final choice after 'I choose:'.";

PromptRecord build_rq2_prompt(const ScenarioTemplate& scenario, const ChoiceSet& choices,
                              const EmpiricalSample& sample, IntervalKind kind, double level, Mode mode);

/// The 360 prompts of one mode, ordered by (scenario, choice set, numbers, level, interval).
std::vector<PromptRecord> generate_rq2_corpus(Mode mode, const EmpiricalSample& narrow, const EmpiricalSample& wide);
std::vector<PromptRecord> generate_rq2_corpus(Mode mode);

/// Ground-truth choice rank for an RQ2 prompt (frequentist proportion mapped
/// through the prompt's choice ranges).
std::size_t empirical_ground_truth(const PromptRecord& prompt);
double empirical_proportion(const PromptRecord& prompt);

}  // namespace wepkit
