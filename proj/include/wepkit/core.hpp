#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wepkit {

// Errors. Every failure the toolkit raises derives from Error so callers can
// map categories onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or unknown identifiers supplied by the caller.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed or out-of-range input data (template files, survey tables, corpora).
class DataError : public Error {
public:
    using Error::Error;
};

/// A prompt could not be instantiated.
class GenerationError : public Error {
public:
    using Error::Error;
};

/// A statistic is undefined for the given input (e.g. zero-variance differences).
class DegenerateError : public Error {
public:
    using Error::Error;
};

enum class Language { English, Chinese };
enum class Setting { CNC, ENC, FCNC, MCNC };
enum class Corpus { Rq1, Rq2 };
enum class Mode { Standard, Cot };
enum class ChoiceSetId { FiveChoices, ThreeChoices };

std::string_view to_string(Language v);
std::string_view to_string(Setting v);
std::string_view to_string(Corpus v);
std::string_view to_string(Mode v);
std::string_view to_string(ChoiceSetId v);

// Parsers accept the canonical spelling case-insensitively and throw ConfigError otherwise.
Language parse_language(std::string_view s);
Setting parse_setting(std::string_view s);
Corpus parse_corpus(std::string_view s);
Mode parse_mode(std::string_view s);
ChoiceSetId parse_choice_set_id(std::string_view s);

inline constexpr std::array kAllSettings{Setting::CNC, Setting::ENC, Setting::FCNC, Setting::MCNC};
inline constexpr std::array kAllChoiceSets{ChoiceSetId::FiveChoices, ChoiceSetId::ThreeChoices};

// ---------------------------------------------------------------------------
// Words of estimative probability

struct Wep {
    std::string canonical_name;
    std::string english_form;
    std::optional<std::string> chinese_form;
};

/// The seventeen surveyed expressions, in their canonical order.
const std::vector<Wep>& wep_registry();

/// Index of a canonical name in wep_registry(), or nullopt.
std::optional<std::size_t> wep_index(std::string_view canonical_name);

/// Lookup by canonical name; throws ConfigError listing valid names when absent.
const Wep& find_wep(std::string_view canonical_name);

std::optional<std::string_view> surface_form(const Wep& wep, Language language);

// ---------------------------------------------------------------------------
// Choice sets

struct Choice {
    char label;
    std::string phrase;
    double range_low;
    double range_high;
    bool low_inclusive;
    bool high_inclusive;

    [[nodiscard]] bool contains(double p) const;
    [[nodiscard]] double midpoint() const { return (range_low + range_high) / 2.0; }
    /// "C.is maybe"
    [[nodiscard]] std::string lettered() const;
};

/// Choices are stored in descending order of likelihood; the index into
/// `choices` is the probability rank (0 = most likely).
struct ChoiceSet {
    ChoiceSetId id;
    std::vector<Choice> choices;

    [[nodiscard]] std::size_t size() const { return choices.size(); }
    [[nodiscard]] std::optional<std::size_t> rank_of_label(char label) const;
    [[nodiscard]] std::optional<std::size_t> rank_of_phrase(std::string_view phrase) const;
    [[nodiscard]] const Choice& by_rank(std::size_t rank) const { return choices.at(rank); }
    /// The unique choice whose range contains p; throws DataError if p is outside [0,1].
    [[nodiscard]] std::size_t rank_for_probability(double p) const;
};

const ChoiceSet& choice_set(ChoiceSetId id);
/// String-keyed variant; unknown ids raise ConfigError.
const ChoiceSet& choice_set(std::string_view id);

/// Rank of the complementary choice ("is maybe" is its own complement).
std::size_t complementary_choice(std::size_t rank, const ChoiceSet& set);
const Choice& complementary_choice(const Choice& choice, const ChoiceSet& set);

// ---------------------------------------------------------------------------
// Intervals and confidence points

enum class IntervalKind {
    BelowLow,
    AboveLow,
    Between,
    BelowLowOrAboveHigh,
    BelowHigh,
    AboveHigh,
};

inline constexpr std::array kAllIntervalKinds{
    IntervalKind::BelowLow,  IntervalKind::AboveLow,  IntervalKind::Between,
    IntervalKind::BelowLowOrAboveHigh, IntervalKind::BelowHigh, IntervalKind::AboveHigh,
};

enum class Direction { Decreasing, Increasing };

std::string_view to_string(IntervalKind k);
IntervalKind parse_interval_kind(std::string_view s);
std::string_view to_string(Direction d);

/// How the probability of the interval moves as the confidence level widens.
Direction direction_under_widening(IntervalKind k);
IntervalKind complement(IntervalKind k);
/// 0, 1 or 2: which complementary pair the kind belongs to.
int complementary_pair_index(IntervalKind k);

/// The five confidence levels, strictly increasing.
std::span<const double> confidence_points();
/// Throws ConfigError unless `level` is one of the five points.
std::size_t confidence_index(double level);

}  // namespace wepkit
