#include "wepkit/parser.hpp"

#include "wepkit/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace wepkit {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

struct Literal {
    double value;
    bool negative;
    bool percent;
};

std::vector<Literal> scan_literals(std::string_view s) {
    std::vector<Literal> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const bool starts = is_digit(s[i]) || (s[i] == '.' && i + 1 < s.size() && is_digit(s[i + 1]));
        // Skip digits glued to letters ("gpt4", "4o") so identifiers are not read as numbers.
        if (!starts || (i > 0 && is_alpha(s[i - 1]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && is_digit(s[j])) ++j;
        if (j + 1 < s.size() && s[j] == '.' && is_digit(s[j + 1])) {
            ++j;
            while (j < s.size() && is_digit(s[j])) ++j;
        }
        double v = 0.0;
        std::from_chars(s.data() + i, s.data() + j, v);
        const bool negative = i > 0 && s[i - 1] == '-' && (i < 2 || !is_digit(s[i - 2]));
        std::size_t k = j;
        while (k < s.size() && s[k] == ' ') ++k;
        const auto rest = s.substr(k);
        const bool percent = rest.starts_with("%") || text::starts_with_icase(rest, "percent") ||
                             text::starts_with_icase(rest, "per cent");
        out.push_back({v, negative, percent});
        i = j;
    }
    return out;
}

std::optional<double> normalise(const Literal& lit, bool percent_context) {
    if (lit.negative) return std::nullopt;
    double v = lit.value;
    if (lit.percent) {
        if (v > 100.0) return std::nullopt;
        v /= 100.0;
    } else if (v > 1.0) {
        if (!(percent_context && v <= 100.0)) return std::nullopt;
        v /= 100.0;
    }
    if (v < 0.0 || v > 1.0) return std::nullopt;
    return v;
}

// Every phrase either choice set uses; cross-set answers are detected rather than coerced.
const std::vector<std::string>& known_phrases() {
    static const std::vector<std::string> phrases = [] {
        std::set<std::string> all;
        for (auto id : kAllChoiceSets) {
            for (const auto& c : choice_set(id).choices) all.insert(text::to_lower(c.phrase));
        }
        return std::vector<std::string>(all.begin(), all.end());
    }();
    return phrases;
}

struct Span {
    std::size_t begin;
    std::size_t end;
    const std::string* phrase;
};

std::vector<std::string> matched_phrases(std::string_view s) {
    const auto lower = text::to_lower(s);
    std::vector<Span> spans;
    for (const auto& phrase : known_phrases()) {
        for (auto pos = lower.find(phrase); pos != std::string::npos; pos = lower.find(phrase, pos + 1)) {
            const auto end = pos + phrase.size();
            const bool left_ok = pos == 0 || !is_alpha(lower[pos - 1]);
            const bool right_ok = end == lower.size() || !is_alpha(lower[end]);
            if (left_ok && right_ok) spans.push_back({pos, end, &phrase});
        }
    }
    std::vector<std::string> out;
    for (const auto& a : spans) {
        const bool nested = std::ranges::any_of(spans, [&](const Span& b) {
            return &b != &a && b.begin <= a.begin && a.end <= b.end && (b.end - b.begin) > (a.end - a.begin);
        });
        if (!nested && std::ranges::find(out, *a.phrase) == out.end()) out.push_back(*a.phrase);
    }
    return out;
}

std::string_view strip_leading_noise(std::string_view s) {
    s = text::trim(s);
    while (!s.empty() && (s.front() == '*' || s.front() == '"' || s.front() == '\'' || s.front() == '`' ||
                          s.front() == '(' || s.front() == '[' || s.front() == ':' || s.front() == '-')) {
        s.remove_prefix(1);
        s = text::trim(s);
    }
    return s;
}

std::optional<char> leading_label(std::string_view s) {
    if (s.empty() || !is_alpha(s[0])) return std::nullopt;
    const char c = s[0];
    const bool upper = c >= 'A' && c <= 'Z';
    if (s.size() == 1) return upper ? std::optional<char>(c) : std::nullopt;
    const char next = s[1];
    if (next == '.' || next == ')') return static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (upper && (next == ':' || next == '*' || next == '"')) return c;
    return std::nullopt;
}

ParseResult failure(std::string reason, bool ambiguous = false) {
    return ParseResult{ParseFailure{std::move(reason), ambiguous}, ambiguous};
}

}  // namespace

ParseResult parse_probability(std::string_view raw) {
    const auto literals = scan_literals(raw);
    if (literals.empty()) return failure("no numeric literal");
    const auto lower = text::to_lower(raw);
    const bool percent_context = lower.find('%') != std::string::npos || lower.find("percent") != std::string::npos ||
                                 lower.find("per cent") != std::string::npos;
    const auto first = normalise(literals.front(), percent_context);
    if (!first) return failure("first literal is outside [0, 1]");
    bool ambiguous = false;
    for (std::size_t i = 1; i < literals.size(); ++i) {
        auto v = normalise(literals[i], percent_context);
        if (v && *v != *first) ambiguous = true;
    }
    return ParseResult{*first, ambiguous};
}

ParseResult parse_choice(std::string_view raw, const ChoiceSet& set, Mode mode) {
    std::string_view region = raw;
    if (mode == Mode::Cot) {
        const auto lower = text::to_lower(raw);
        constexpr std::string_view marker = "i choose:";
        const auto pos = lower.rfind(marker);
        if (pos == std::string::npos) return failure("no 'I choose:' marker");
        region = raw.substr(pos + marker.size());
    }
    region = strip_leading_noise(region);
    if (region.empty()) return failure("empty answer");

    const auto label = leading_label(region);
    std::optional<std::size_t> label_rank;
    if (label) {
        label_rank = set.rank_of_label(*label);
        if (!label_rank) return failure(std::string("label ") + *label + " is not in " + std::string(to_string(set.id)));
    }

    const auto phrases = matched_phrases(region);
    if (phrases.size() > 1) return failure("several distinct choices mentioned", true);
    std::optional<std::size_t> phrase_rank;
    if (phrases.size() == 1) {
        phrase_rank = set.rank_of_phrase(phrases.front());
        if (!phrase_rank) return failure("'" + phrases.front() + "' is not in " + std::string(to_string(set.id)));
    }

    if (label_rank && phrase_rank && *label_rank != *phrase_rank) {
        return failure("label and phrase disagree", true);
    }
    const auto rank = label_rank ? label_rank : phrase_rank;
    if (!rank) return failure("no choice found");
    return ParseResult{ChoiceAnswer{set.by_rank(*rank).label, *rank}, false};
}

ParseResult parse_response(std::string_view raw, const PromptRecord& prompt) {
    if (prompt.corpus == Corpus::Rq1) return parse_probability(raw);
    return parse_choice(raw, choice_set(prompt.rq2().choice_set), prompt.mode);
}

}  // namespace wepkit
