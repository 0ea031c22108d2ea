#pragma once

#include <string_view>
#include <vector>

#include "polaris/policylang/diagnostics.hpp"
#include "polaris/policylang/interpreter.hpp"

namespace polaris::policylang {

inline constexpr std::string_view kProbeInput = "VALIDATION_PROBE";

struct ValidationReport {
  bool syntactic_ok = false;
  bool executable_ok = false;  // implies syntactic_ok
  std::vector<Diagnostic> diagnostics;
};

Json to_json(const ValidationReport& r);

/// Offline stand-in for the model: every CALL receives n copies of
/// {"reasoning":"probe","answer":"0"}, extended with "0" for any other
/// required field.
class StubCallHandler final : public CallHandler {
 public:
  std::vector<Json> call(const CallSpec& spec) override;
  int calls() const { return calls_; }

 private:
  int calls_ = 0;
};

/// Syntactic check plus a dry run on the probe input. Never raises and never
/// touches a live backend.
ValidationReport validate(std::string_view source);
ValidationReport validate(std::string_view source, CallHandler& stub);

}  // namespace polaris::policylang
