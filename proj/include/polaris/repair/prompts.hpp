#pragma once

#include <string>
#include <vector>

#include "polaris/core/types.hpp"
#include "polaris/policylang/patch.hpp"

namespace polaris::repair {

// Operator templates. Placeholders use {name} and are filled with
// policylang::render_template, so substituted text is never re-expanded.

/// {question} {reasoning} {answer} {correct_answer} {current_policy}
extern const char* const kAnalyzeFailuresPrompt;
/// {combined_reflections} {current_policy} {prior_strategies}
extern const char* const kStrategySynthesisPrompt;
/// {current_policy} {repair_strategies}
extern const char* const kPatchGenerationPrompt;
/// {current_policy}; the patches are appended after the template.
extern const char* const kUpdatePolicyPrompt;

/// Appended to the patch prompt in anchored mode.
extern const char* const kAnchoredPatchFormat;
extern const char* const kReflectionReask;

std::string analyze_failures_prompt(const FailureRecord& f, const std::string& policy_source);
std::string strategy_synthesis_prompt(const std::vector<Reflection>& reflections, const std::string& policy_source,
                                      const std::vector<Strategy>& prior);
std::string patch_generation_prompt(const std::string& policy_source, const std::vector<Strategy>& strategies,
                                    PatchMode mode);
std::string update_policy_prompt(const std::string& policy_source, const std::vector<Patch>& patches,
                                 const std::vector<Strategy>& strategies);

/// Re-ask listing the sections that could not be used and why.
std::string patch_reask_prompt(const std::vector<std::pair<std::string, std::string>>& problems, PatchMode mode);
/// Anchored-mode integration retry: the merged candidate failed these checks.
std::string patch_retry_prompt(const std::vector<std::string>& diagnostics);

}  // namespace polaris::repair
