#pragma once

#include "wepkit/records.hpp"

namespace wepkit {

struct ParseResult {
    ParsedValue value = ParseFailure{"empty"};
    /// Several conflicting candidates were present; the first one was kept.
    bool ambiguous = false;

    [[nodiscard]] bool ok() const { return !std::holds_alternative<ParseFailure>(value); }
};

/// First decimal literal in `raw`, normalised to [0,1]. A literal followed by
/// '%' (or in a text mentioning "percent") is divided by 100.
ParseResult parse_probability(std::string_view raw);

/// Choice by leading letter label or by full phrase. In CoT mode only the
/// text after the last "I choose:" is considered.
ParseResult parse_choice(std::string_view raw, const ChoiceSet& set, Mode mode);

/// Dispatches on the prompt's corpus.
ParseResult parse_response(std::string_view raw, const PromptRecord& prompt);

}  // namespace wepkit
