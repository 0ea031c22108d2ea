#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polaris/core/artifacts.hpp"
#include "polaris/core/ledger.hpp"
#include "polaris/core/state.hpp"
#include "polaris/core/types.hpp"
#include "polaris/llm/backend.hpp"
#include "polaris/policylang/patch.hpp"

namespace polaris::repair {

/// Everything an operator needs besides its direct inputs. The recorder's
/// iteration is the repair cycle index and is used in request tags.
struct RepairContext {
  llm::Backend& backend;
  Recorder& recorder;
  /// Run directory writer; null disables artifact output.
  const ArtifactStore* store = nullptr;
  std::string model;
  PatchMode mode = PatchMode::anchored;
  int max_retries = 3;

  int iteration() const { return recorder.iteration(); }
  /// chat() with the model filled in.
  llm::ChatResponse ask(llm::ChatRequest request);
};

inline constexpr int kMaxStrategiesPerCycle = 2;

// -- failure analysis -------------------------------------------------------

struct ReflectionSections {
  std::string diagnosis;
  std::string revision;
  std::string prevention;
};

/// Numbered ("1.", "2)", "**3.**") or labelled ("Diagnosis:", "Advice:")
/// sections. Missing sections come back empty.
ReflectionSections parse_reflection(std::string_view response);

/// One analysis request (tag analyze/<task>), plus one structured re-ask
/// (analyze_reask/<task>) when a section is missing. Incomplete reflections
/// are returned with the missing fields empty. Appends a reflection entry.
Reflection analyze_failure(const PolicyVersion& policy, const AgentState& state, const FailureRecord& failure,
                           RepairContext& ctx);

// -- strategy synthesis -----------------------------------------------------

/// Bullet or numbered lines; when there are none, every non-empty line.
std::vector<std::string> parse_strategy_lines(std::string_view response);

struct SynthesisResult {
  std::vector<Strategy> kept;
  /// Proposed directives that were cut by the cap or collided with memory.
  std::vector<std::string> dropped;
};

/// One request (strategy/<iter>). Keeps at most two directives, then drops
/// any whose normalized text matches a prior or already kept strategy.
/// Appends one strategy entry per kept directive.
SynthesisResult synthesize_strategies(const PolicyVersion& policy, const AgentState& state,
                                      const std::vector<Reflection>& reflections, const std::vector<Strategy>& prior,
                                      RepairContext& ctx);

// -- patch generation -------------------------------------------------------

/// Empty when the body is usable, otherwise the reason. Anchored bodies
/// must parse and stay inside the policy; rewrite bodies must consist of
/// policy statements (no prose).
std::optional<std::string> check_patch_body(std::string_view body, PatchMode mode, std::size_t policy_lines);

struct PatchGenerationResult {
  std::vector<Patch> patches;
  /// Raw responses: first request, then the re-ask if any.
  std::vector<std::string> responses;
  std::vector<std::string> problems;
};

/// Pairs response sections with strategies: by normalized text first, then
/// pairing the leftovers in order. Sections that cannot be paired are ignored.
std::vector<std::pair<const Strategy*, std::string>> pair_sections(
    const std::vector<policylang::PatchSection>& sections, const std::vector<Strategy>& strategies);

/// One request (patch/<iter>); invalid or missing bodies are re-requested
/// once together (patch_reask/<iter>) and dropped if still invalid.
PatchGenerationResult generate_patches(const PolicyVersion& policy, const std::vector<Strategy>& strategies,
                                       RepairContext& ctx);

}  // namespace polaris::repair
