#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polaris/policylang/validator.hpp"
#include "polaris/repair/operators.hpp"

namespace polaris::repair {

/// Full policy inside the first fenced block (``` or ''' closes it); nullopt
/// when the response has no fence.
std::optional<std::string> extract_fenced_policy(std::string_view response);

struct CandidateResult {
  std::optional<std::string> source;
  std::string error;  // why there is no candidate
};

/// Anchored: applies all patches, merged, to the current source. Rewrite:
/// one Update Policy request (update/<iter>/<attempt>) and the fenced block
/// of its reply.
CandidateResult update_policy(const PolicyVersion& policy, const std::vector<Patch>& patches,
                              const std::vector<Strategy>& strategies, int attempt, RepairContext& ctx);

enum class CycleOutcome {
  integrated,
  archived_after_retries,
  skipped_no_failures,
  skipped_no_reflections,
  skipped_no_strategies,
  skipped_no_patches,
};
std::string to_string(CycleOutcome o);

struct AttemptRecord {
  int attempt = 0;
  bool candidate = false;
  bool syntactic_ok = false;
  bool executable_ok = false;
  std::vector<std::string> diagnostics;
};
Json to_json(const AttemptRecord& a);

struct IntegrationResult {
  CycleOutcome outcome = CycleOutcome::archived_after_retries;
  std::optional<PolicyVersion> policy;  // set when integrated
  std::vector<AttemptRecord> attempts;
  /// Patches as finally used (anchored retries may replace them).
  std::vector<Patch> patches;
};

/// Up to max_retries + 1 attempts of update_policy + validate. A missing or
/// non-executable candidate uses up an attempt; in anchored mode the next
/// attempt re-requests corrected patches (patch_retry/<iter>/<attempt>).
/// On success appends a policy_update entry and writes policies/ and diffs/.
/// Always appends one patch_outcome entry. `feedback` is archived with the
/// patches when every attempt fails.
IntegrationResult integrate_patch(const PolicyVersion& policy, const AgentState& state, std::vector<Patch> patches,
                                  const std::vector<Strategy>& strategies, const Json& feedback, RepairContext& ctx);

}  // namespace polaris::repair
