#include "wepkit/core.hpp"

#include "wepkit/text.hpp"

#include <algorithm>
#include <cmath>

namespace wepkit {

namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view s, const std::array<std::pair<E, std::string_view>, N>& table,
             std::string_view what) {
    for (const auto& [value, name] : table) {
        if (text::iequals(s, name)) return value;
    }
    std::string valid;
    for (const auto& [value, name] : table) {
        if (!valid.empty()) valid += ", ";
        valid += name;
    }
    throw ConfigError("unknown " + std::string(what) + " '" + std::string(s) + "' (valid: " + valid + ")");
}

constexpr std::array<std::pair<Language, std::string_view>, 2> kLanguages{{
    {Language::English, "English"},
    {Language::Chinese, "Chinese"},
}};
constexpr std::array<std::pair<Setting, std::string_view>, 4> kSettings{{
    {Setting::CNC, "CNC"},
    {Setting::ENC, "ENC"},
    {Setting::FCNC, "FCNC"},
    {Setting::MCNC, "MCNC"},
}};
constexpr std::array<std::pair<Corpus, std::string_view>, 2> kCorpora{{
    {Corpus::Rq1, "rq1"},
    {Corpus::Rq2, "rq2"},
}};
constexpr std::array<std::pair<Mode, std::string_view>, 2> kModes{{
    {Mode::Standard, "standard"},
    {Mode::Cot, "cot"},
}};
constexpr std::array<std::pair<ChoiceSetId, std::string_view>, 2> kChoiceSetIds{{
    {ChoiceSetId::FiveChoices, "five_choices"},
    {ChoiceSetId::ThreeChoices, "three_choices"},
}};
constexpr std::array<std::pair<IntervalKind, std::string_view>, 6> kIntervalKinds{{
    {IntervalKind::BelowLow, "below_low"},
    {IntervalKind::AboveLow, "above_low"},
    {IntervalKind::Between, "between"},
    {IntervalKind::BelowLowOrAboveHigh, "below_low_or_above_high"},
    {IntervalKind::BelowHigh, "below_high"},
    {IntervalKind::AboveHigh, "above_high"},
}};

template <typename E, std::size_t N>
std::string_view name_of(E v, const std::array<std::pair<E, std::string_view>, N>& table) {
    for (const auto& [value, name] : table) {
        if (value == v) return name;
    }
    return "?";
}

}  // namespace

std::string_view to_string(Language v) { return name_of(v, kLanguages); }
std::string_view to_string(Setting v) { return name_of(v, kSettings); }
std::string_view to_string(Corpus v) { return name_of(v, kCorpora); }
std::string_view to_string(Mode v) { return name_of(v, kModes); }
std::string_view to_string(ChoiceSetId v) { return name_of(v, kChoiceSetIds); }
std::string_view to_string(IntervalKind k) { return name_of(k, kIntervalKinds); }
std::string_view to_string(Direction d) { return d == Direction::Increasing ? "increasing" : "decreasing"; }

Language parse_language(std::string_view s) { return parse_enum(s, kLanguages, "language"); }
Setting parse_setting(std::string_view s) { return parse_enum(s, kSettings, "setting"); }
Corpus parse_corpus(std::string_view s) { return parse_enum(s, kCorpora, "corpus"); }
Mode parse_mode(std::string_view s) { return parse_enum(s, kModes, "mode"); }
ChoiceSetId parse_choice_set_id(std::string_view s) { return parse_enum(s, kChoiceSetIds, "choice set"); }
IntervalKind parse_interval_kind(std::string_view s) { return parse_enum(s, kIntervalKinds, "interval kind"); }

// ---------------------------------------------------------------------------

const std::vector<Wep>& wep_registry() {
    // Chinese forms are adverbial renderings chosen for this project; only
    // "probably" is attested (as it appears in the translated CNC example).
    static const std::vector<Wep> registry{
        {"almost certain", "almost certain", "几乎肯定"},
        {"highly likely", "highly likely", "极有可能"},
        {"very good chance", "very good chance", "有很大机会"},
        {"probable", "probable", "大概"},
        {"likely", "likely", "可能"},
        {"we believe", "we believe", "我们相信"},
        {"probably", "probably", "很可能会"},
        {"better than even", "better than even", "有一半以上的可能"},
        {"about even", "about even", "大约有一半可能"},
        {"we doubt", "we doubt", "我们怀疑"},
        {"improbable", "improbable", "不太可能"},
        {"unlikely", "unlikely", "不大可能"},
        {"probably not", "probably not", "很可能不会"},
        {"little chance", "little chance", "很少有机会"},
        {"almost no chance", "almost no chance", "几乎没有机会"},
        {"highly unlikely", "highly unlikely", "极不可能"},
        {"chances are slight", "chances are slight", "只有很小的可能"},
    };
    return registry;
}

std::optional<std::size_t> wep_index(std::string_view canonical_name) {
    const auto& reg = wep_registry();
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (reg[i].canonical_name == canonical_name) return i;
    }
    return std::nullopt;
}

const Wep& find_wep(std::string_view canonical_name) {
    if (auto idx = wep_index(canonical_name)) return wep_registry()[*idx];
    std::string valid;
    for (const auto& w : wep_registry()) {
        if (!valid.empty()) valid += ", ";
        valid += w.canonical_name;
    }
    throw ConfigError("unknown WEP '" + std::string(canonical_name) + "' (valid: " + valid + ")");
}

std::optional<std::string_view> surface_form(const Wep& wep, Language language) {
    if (language == Language::English) return wep.english_form;
    if (wep.chinese_form) return *wep.chinese_form;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

bool Choice::contains(double p) const {
    const bool above = low_inclusive ? p >= range_low : p > range_low;
    const bool below = high_inclusive ? p <= range_high : p < range_high;
    return above && below;
}

std::string Choice::lettered() const { return std::string(1, label) + "." + phrase; }

std::optional<std::size_t> ChoiceSet::rank_of_label(char label) const {
    for (std::size_t i = 0; i < choices.size(); ++i) {
        if (choices[i].label == label) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> ChoiceSet::rank_of_phrase(std::string_view phrase) const {
    for (std::size_t i = 0; i < choices.size(); ++i) {
        if (text::iequals(choices[i].phrase, phrase)) return i;
    }
    return std::nullopt;
}

std::size_t ChoiceSet::rank_for_probability(double p) const {
    for (std::size_t i = 0; i < choices.size(); ++i) {
        if (choices[i].contains(p)) return i;
    }
    throw DataError("probability " + std::to_string(p) + " is outside [0, 1]");
}

const ChoiceSet& choice_set(ChoiceSetId id) {
    // Ranges and per-side inclusivity as published with the two answer sets.
    static const ChoiceSet five{
        ChoiceSetId::FiveChoices,
        {
            {'A', "is almost certainly", 0.92, 1.0, false, true},
            {'B', "is likely to be", 0.61, 0.92, false, true},
            {'C', "is maybe", 0.41, 0.61, true, true},
            {'D', "is unlikely to be", 0.13, 0.41, true, false},
            {'E', "is almost certainly not", 0.0, 0.13, true, false},
        },
    };
    static const ChoiceSet three{
        ChoiceSetId::ThreeChoices,
        {
            {'A', "is likely to be", 0.61, 1.0, false, true},
            {'B', "is maybe", 0.41, 0.61, true, true},
            {'C', "is unlikely to be", 0.0, 0.41, true, false},
        },
    };
    return id == ChoiceSetId::FiveChoices ? five : three;
}

const ChoiceSet& choice_set(std::string_view id) { return choice_set(parse_choice_set_id(id)); }

std::size_t complementary_choice(std::size_t rank, const ChoiceSet& set) {
    if (rank >= set.size()) throw ConfigError("choice rank out of range for " + std::string(to_string(set.id)));
    return set.size() - 1 - rank;
}

const Choice& complementary_choice(const Choice& choice, const ChoiceSet& set) {
    auto rank = set.rank_of_label(choice.label);
    if (!rank || set.choices[*rank].phrase != choice.phrase) {
        throw ConfigError("choice '" + choice.lettered() + "' does not belong to " + std::string(to_string(set.id)));
    }
    return set.choices[complementary_choice(*rank, set)];
}

// ---------------------------------------------------------------------------

Direction direction_under_widening(IntervalKind k) {
    switch (k) {
        case IntervalKind::BelowLow:
        case IntervalKind::BelowLowOrAboveHigh:
        case IntervalKind::AboveHigh:
            return Direction::Decreasing;
        case IntervalKind::AboveLow:
        case IntervalKind::Between:
        case IntervalKind::BelowHigh:
            return Direction::Increasing;
    }
    return Direction::Increasing;
}

IntervalKind complement(IntervalKind k) {
    switch (k) {
        case IntervalKind::BelowLow: return IntervalKind::AboveLow;
        case IntervalKind::AboveLow: return IntervalKind::BelowLow;
        case IntervalKind::Between: return IntervalKind::BelowLowOrAboveHigh;
        case IntervalKind::BelowLowOrAboveHigh: return IntervalKind::Between;
        case IntervalKind::BelowHigh: return IntervalKind::AboveHigh;
        case IntervalKind::AboveHigh: return IntervalKind::BelowHigh;
    }
    return k;
}

int complementary_pair_index(IntervalKind k) {
    switch (k) {
        case IntervalKind::BelowLow:
        case IntervalKind::AboveLow:
            return 0;
        case IntervalKind::Between:
        case IntervalKind::BelowLowOrAboveHigh:
            return 1;
        case IntervalKind::BelowHigh:
        case IntervalKind::AboveHigh:
            return 2;
    }
    return 0;
}

std::span<const double> confidence_points() {
    static constexpr std::array<double, 5> points{0.05, 0.275, 0.5, 0.725, 0.95};
    return points;
}

std::size_t confidence_index(double level) {
    const auto points = confidence_points();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (std::abs(points[i] - level) < 1e-12) return i;
    }
    throw ConfigError("confidence level " + std::to_string(level) +
                      " is not one of 0.05, 0.275, 0.5, 0.725, 0.95");
}

}  // namespace wepkit
