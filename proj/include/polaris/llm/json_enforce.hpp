#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polaris/core/error.hpp"
#include "polaris/core/types.hpp"
#include "polaris/llm/backend.hpp"

namespace polaris::llm {

/// System prompt of the JSON helper agent, verbatim.
extern const char* const kJsonHelperSystemPrompt;

/// "### Input JSON:\n{response}\n### Corrected JSON:"
std::string json_helper_user_message(std::string_view response);

class FormatError : public Error {
 public:
  FormatError(const std::string& message, std::string raw) : Error(message), raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

struct EnforceResult {
  Json record;
  /// 1: parsed as-is, 2: local repair, 3: helper call.
  int stage = 1;
};

/// Where the helper call goes. A null backend disables stage 3.
struct HelperChannel {
  Backend* backend = nullptr;
  std::string tag;
  std::string model;
};

/// Turns a model reply into a JSON object holding every required field:
/// strict parse after removing code fences, then local repairs, then at most
/// one helper call. Throws FormatError (carrying `raw`) when all fail, and
/// ParameterError when `required` is empty.
EnforceResult json_enforce(std::string_view raw, const std::vector<std::string>& required,
                           const HelperChannel& helper = {});

/// Stage 1 and 2 only; empty optional-like null Json on failure.
Json parse_lenient(std::string_view raw, int* stage = nullptr);

}  // namespace polaris::llm
