#pragma once

#include <string>
#include <vector>

#include "polaris/eval/evaluator.hpp"

namespace polaris::eval {

/// Chain-of-thought prompt shared by every sampled path. {task_input} is
/// replaced by the question.
extern const char* const kCotScPrompt;

struct CotScOutcome {
  std::string answer;
  std::string reasoning;
  /// Parsed answer of every path that yielded a usable record.
  std::vector<std::string> path_answers;
  bool failed = false;
};

/// One request with n = paths; each reply through json_enforce; majority
/// vote (first occurrence wins ties). Fails only when no path parses.
CotScOutcome cot_sc(const TaskInstance& task, int paths, llm::Backend& backend, const std::string& model = {},
                    double temperature = 0.7);

/// Baseline score of CoT-SC over a dataset, in dataset order.
EvaluationResult evaluate_cot_sc(const Dataset& dataset, int paths, llm::Backend& backend,
                                 const EvalOptions& options);

}  // namespace polaris::eval
