#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polaris::text {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);
std::string collapse_whitespace(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

/// Lowercase, strip punctuation, collapse whitespace. Used for strategy novelty.
std::string normalize_directive(std::string_view s);

/// Parses the whole (trimmed) string as a finite decimal number.
std::optional<double> parse_number(std::string_view s);

/// Shortest round-trippable rendering; integral values print without a
/// fractional part ("7.0" -> "7", "-0" -> "0").
std::string canonical_number(double v);

/// Fixed-precision rendering for CSV/report output.
std::string fixed(double v, int digits = 6);

/// Splits on '\n'. A trailing newline does not produce an empty last line.
std::vector<std::string> split_lines(std::string_view s);
std::string join_lines(const std::vector<std::string>& lines, bool trailing_newline);
bool ends_with_newline(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

/// Removes a surrounding markdown code fence (```lang ... ```), if any.
std::string strip_code_fence(std::string_view s);

}  // namespace polaris::text
