#pragma once

#include <string>
#include <string_view>
#include <vector>

// Small ASCII string helpers shared across modules. UTF-8 bytes outside the
// ASCII range pass through untouched.
namespace wepkit::text {

bool iequals(std::string_view a, std::string_view b);
std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool starts_with_icase(std::string_view s, std::string_view prefix);
std::size_t count_occurrences(std::string_view haystack, std::string_view needle);
/// Whitespace-delimited token count.
std::size_t word_count(std::string_view s);

/// Shortest decimal representation that round-trips.
std::string format_double(double v);
/// Fixed-point with `digits` decimals.
std::string format_fixed(double v, int digits);

}  // namespace wepkit::text
