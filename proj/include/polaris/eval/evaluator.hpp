#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polaris/core/types.hpp"
#include "polaris/eval/bootstrap.hpp"
#include "polaris/eval/dataset.hpp"
#include "polaris/llm/backend.hpp"
#include "polaris/policylang/interpreter.hpp"

namespace polaris::eval {

inline constexpr const char* kExecutionErrorAnswer = "<execution-error>";

struct InstanceResult {
  std::string task_id;
  std::string predicted;
  std::string reasoning;
  /// 0/1 for accuracy-style metrics, token F1 under macro_f1.
  double value = 0.0;
  bool correct = false;
  /// Set when the policy failed on this instance.
  std::optional<std::string> error;
};

struct EvaluationResult {
  double score = 0.0;
  std::optional<Interval> ci;
  std::vector<InstanceResult> per_instance;
  std::vector<FailureRecord> failures;
  int policy_version = 0;
};

Json to_json(const InstanceResult& r);
Json to_json(const EvaluationResult& r);

struct EvalOptions {
  Metric metric = Metric::accuracy_ci;
  int parallelism = 1;
  std::string model;
  int bootstrap_samples = 2000;
  double ci_level = 0.95;
  std::uint64_t seed = 0;
};

/// System message for a policy CALL: the role plus the one-shot JSON format
/// the reply must follow.
std::string solver_system_prompt(const std::string& role, const std::vector<std::string>& require);

/// Answers policy CALLs through a chat backend. Each reply goes through
/// json_enforce. Transport and format problems become CallFailure (the
/// instance fails); configuration and protocol errors propagate.
class BackendCallHandler final : public policylang::CallHandler {
 public:
  BackendCallHandler(llm::Backend& backend, std::string task_id, std::string model = {});
  std::vector<Json> call(const policylang::CallSpec& spec) override;

 private:
  llm::Backend& backend_;
  std::string task_id_;
  std::string model_;
};

/// Builds the per-instance result list into a scored EvaluationResult.
EvaluationResult finalize(std::vector<InstanceResult> per_instance, const Dataset& dataset,
                          const EvalOptions& options, int policy_version);

/// Runs the policy on every instance (in parallel when both options and the
/// backend allow it; results stay in dataset order) and scores the outputs.
/// Throws ParseError if the policy does not parse; fatal backend errors
/// propagate and discard the partial result.
EvaluationResult evaluate(const PolicyVersion& policy, const Dataset& dataset, llm::Backend& backend,
                          const EvalOptions& options);

}  // namespace polaris::eval
