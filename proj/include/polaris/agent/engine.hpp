#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polaris/agent/champion.hpp"
#include "polaris/core/artifacts.hpp"
#include "polaris/core/clock.hpp"
#include "polaris/core/config.hpp"
#include "polaris/core/ledger.hpp"
#include "polaris/core/state.hpp"
#include "polaris/eval/evaluator.hpp"
#include "polaris/repair/repair_policy.hpp"

namespace polaris::agent {

enum class ActionName { self_state, interact, self_update, continue_improve };
std::string to_string(ActionName a);
std::optional<ActionName> action_from_string(std::string_view s);

struct Action {
  ActionName name = ActionName::self_state;
  /// Full policy source for self_update.
  std::string code;
};

enum class RunCategory { successful, no_improvement, unsuccessful };
std::string to_string(RunCategory c);

struct RunRecord {
  std::string run_id;
  Json config;
  int iterations_completed = 0;
  RunCategory category = RunCategory::no_improvement;
  Champion champion;
  double base_validation_score = 0.0;
  std::optional<double> base_test_score;
  std::optional<double> champion_test_score;
  /// Elapsed seconds; 0 under the logical clock so artifacts stay stable.
  double wall_seconds = 0.0;
  std::string diagnostic;
};

Json to_json(const RunRecord& r);

struct EngineInputs {
  eval::Dataset validation;
  eval::Dataset test;
  std::string base_policy;
};

/// The outer self-improvement loop. One engine owns one run directory.
class Engine {
 public:
  /// Creates runs/<run_id>/, writes config.snapshot and opens memory.log.
  /// Throws ConfigError when the base policy is not executable or N exceeds
  /// the validation size.
  Engine(RunConfig config, EngineInputs inputs, llm::Backend& backend, Clock& clock);
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  /// Current policy, goal, config summary and the last k ledger entries.
  /// Appends a self_state action entry.
  AgentState self_inspect();

  /// Dispatches one action; see the README for the per-action ledger entries.
  void execute_action(const Action& action);

  /// Whole run: iteration-0 evaluation, improvement rounds until the budget
  /// is spent (or nothing is left to repair), then test-split scoring.
  /// Fatal errors end the run as unsuccessful; run.json is written in every
  /// case.
  RunRecord run();

  const PolicyVersion& policy() const { return policy_; }
  const Champion& champion() const { return champion_; }
  const MemoryLedger& ledger() const { return ledger_; }
  const std::vector<Strategy>& strategies() const { return strategies_; }
  const std::vector<repair::RepairCycleRecord>& cycles() const { return cycles_; }
  int iteration() const { return recorder_.iteration(); }
  const ArtifactStore& store() const { return store_; }

  /// Validation evaluation of the current policy (cached per version).
  const eval::EvaluationResult& evaluate_current();

 private:
  const eval::EvaluationResult& evaluate(const PolicyVersion& p, const eval::Dataset& ds);
  void record_score(int iteration, const std::string& split, const eval::EvaluationResult& r);
  void interact();
  void self_update(const std::string& code);
  void begin();
  bool budget_left(int next_round) const;
  std::vector<Action> decide_actions(int round);
  void finish(RunRecord& rec);

  RunConfig config_;
  EngineInputs inputs_;
  llm::Backend& backend_;
  Clock& clock_;
  ArtifactStore store_;
  MemoryLedger ledger_;
  Recorder recorder_;

  PolicyVersion policy_;
  PolicyVersion base_;
  std::map<int, PolicyVersion> versions_;
  int next_version_ = 1;
  Champion champion_;
  std::vector<Strategy> strategies_;
  std::vector<repair::RepairCycleRecord> cycles_;
  std::map<std::pair<int, std::string>, eval::EvaluationResult> eval_cache_;
  bool nothing_to_repair_ = false;
  bool started_ = false;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace polaris::agent
