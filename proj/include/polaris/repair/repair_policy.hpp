#pragma once

#include <optional>
#include <vector>

#include "polaris/core/config.hpp"
#include "polaris/repair/integrate.hpp"

namespace polaris::repair {

struct RepairCycleRecord {
  int iteration = 0;
  std::vector<Reflection> reflections;
  std::vector<Strategy> strategies;
  std::vector<Patch> patches;
  CycleOutcome outcome = CycleOutcome::skipped_no_failures;
  std::optional<int> candidate_version;
  std::vector<AttemptRecord> attempts;
  /// Why a phase was cut short (dropped strategies, unusable patches, ...).
  std::vector<std::string> notes;
};

Json to_json(const RepairCycleRecord& r);

/// One repair cycle: sample N failures, analyze each, synthesize strategies
/// (growing `strategy_set`), generate patches and integrate them. Never
/// throws for operator-level problems; ConfigError and BackendError still
/// propagate. Writes reflections/, strategies/ and patches/ for the cycle.
/// Returns the (possibly) new policy.
PolicyVersion repair_policy(const PolicyVersion& policy, const AgentState& state,
                            const std::vector<FailureRecord>& failures, const Json& feedback, const RunConfig& config,
                            std::vector<Strategy>& strategy_set, RepairContext& ctx, RepairCycleRecord* record = nullptr);

}  // namespace polaris::repair
