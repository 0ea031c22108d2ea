#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polaris/core/types.hpp"

namespace polaris::eval {

/// trim + casefold; strings that parse as numbers are canonicalized ("7.0" -> "7").
std::string normalize_answer(std::string_view s);
bool exact_match(std::string_view predicted, std::string_view target);

/// Token-bag F1: lowercase, punctuation stripped, whitespace tokens, numeric
/// tokens canonicalized. Two empty token bags score 1.
double token_f1(std::string_view predicted, std::string_view target);

/// 'A' or 'B' when the text is exactly that label (any case) or contains
/// exactly one of the standalone tokens A / B; nullopt otherwise.
std::optional<char> preference_label(std::string_view s);
bool preference_match(std::string_view predicted, std::string_view target);

/// Per-instance value in [0,1]; an instance is correct only at 1.
double score_instance(Metric m, std::string_view predicted, std::string_view target);

/// Fraction of true flags. Throws ParameterError on empty input.
double accuracy(const std::vector<bool>& correct);
/// Unweighted mean. Throws ParameterError on empty input.
double mean(const std::vector<double>& values);

}  // namespace polaris::eval
