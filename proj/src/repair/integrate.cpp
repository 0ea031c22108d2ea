#include "polaris/repair/integrate.hpp"

#include "polaris/core/text.hpp"
#include "polaris/policylang/diff.hpp"
#include "polaris/policylang/patch.hpp"
#include "polaris/repair/prompts.hpp"

namespace polaris::repair {

std::string to_string(CycleOutcome o) {
  switch (o) {
    case CycleOutcome::integrated: return "integrated";
    case CycleOutcome::archived_after_retries: return "archived_after_retries";
    case CycleOutcome::skipped_no_failures: return "skipped_no_failures";
    case CycleOutcome::skipped_no_reflections: return "skipped_no_reflections";
    case CycleOutcome::skipped_no_strategies: return "skipped_no_strategies";
    case CycleOutcome::skipped_no_patches: return "skipped_no_patches";
  }
  return "?";
}

Json to_json(const AttemptRecord& a) {
  return Json{{"attempt", a.attempt},
              {"candidate", a.candidate},
              {"syntactic_ok", a.syntactic_ok},
              {"executable_ok", a.executable_ok},
              {"diagnostics", a.diagnostics}};
}

std::optional<std::string> extract_fenced_policy(std::string_view response) {
  const auto lines = text::split_lines(response);
  std::size_t i = 0;
  while (i < lines.size() && !text::starts_with(text::trim(lines[i]), "```")) ++i;
  if (i == lines.size()) return std::nullopt;
  std::vector<std::string> body;
  for (++i; i < lines.size(); ++i) {
    const std::string t = text::trim(lines[i]);
    if (text::starts_with(t, "```") || text::starts_with(t, "'''")) break;
    body.push_back(lines[i]);
  }
  if (body.empty()) return std::nullopt;
  return text::join_lines(body, true);
}

CandidateResult update_policy(const PolicyVersion& policy, const std::vector<Patch>& patches,
                              const std::vector<Strategy>& strategies, int attempt, RepairContext& ctx) {
  if (ctx.mode == PatchMode::anchored) {
    try {
      std::vector<policylang::AnchoredPatch> parsed;
      for (const auto& p : patches) parsed.push_back(policylang::parse_patch_body(p.body));
      return {policylang::apply_patch(policy.source, policylang::merge_patches(parsed)), ""};
    } catch (const policylang::PatchError& e) {
      return {std::nullopt, std::string("patch does not apply: ") + e.what()};
    }
  }
  const std::string tag = "update/" + std::to_string(ctx.iteration()) + "/" + std::to_string(attempt);
  const std::string reply =
      ctx.ask(llm::make_request("", update_policy_prompt(policy.source, patches, strategies), tag)).texts.front();
  if (auto src = extract_fenced_policy(reply)) return {std::move(src), ""};
  return {std::nullopt, "response has no fenced policy block"};
}

namespace {

/// Anchored retry: ask for corrected patches; returns nullopt when none of
/// the strategies got a usable body.
std::optional<std::vector<Patch>> regenerate_patches(const PolicyVersion& policy,
                                                     const std::vector<Strategy>& strategies,
                                                     const std::vector<std::string>& diagnostics, int attempt,
                                                     RepairContext& ctx) {
  const std::size_t n_lines = text::split_lines(policy.source).size();
  llm::ChatRequest req;
  req.messages = {{"user", patch_generation_prompt(policy.source, strategies, PatchMode::anchored)},
                  {"user", patch_retry_prompt(diagnostics)}};
  req.tag = "patch_retry/" + std::to_string(ctx.iteration()) + "/" + std::to_string(attempt);
  const std::string reply = ctx.ask(req).texts.front();
  std::vector<Patch> out;
  for (const auto& [s, body] : pair_sections(policylang::parse_patch_sections(reply), strategies)) {
    if (!check_patch_body(body, PatchMode::anchored, n_lines)) out.push_back(Patch{s->id, body, PatchMode::anchored});
  }
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace

IntegrationResult integrate_patch(const PolicyVersion& policy, const AgentState& /*state*/, std::vector<Patch> patches,
                                  const std::vector<Strategy>& strategies, const Json& feedback, RepairContext& ctx) {
  IntegrationResult res;
  const int max_attempts = ctx.max_retries + 1;
  std::vector<std::string> last_diagnostics;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    AttemptRecord rec;
    rec.attempt = attempt;
    CandidateResult cand;
    if (attempt > 1 && ctx.mode == PatchMode::anchored) {
      auto fresh = regenerate_patches(policy, strategies, last_diagnostics, attempt, ctx);
      if (fresh) {
        patches = std::move(*fresh);
        cand = update_policy(policy, patches, strategies, attempt, ctx);
      } else {
        cand.error = "retry response held no usable patch";
      }
    } else {
      cand = update_policy(policy, patches, strategies, attempt, ctx);
    }

    if (!cand.source) {
      rec.diagnostics.push_back(cand.error);
    } else {
      rec.candidate = true;
      const auto report = policylang::validate(*cand.source);
      rec.syntactic_ok = report.syntactic_ok;
      rec.executable_ok = report.executable_ok;
      for (const auto& d : report.diagnostics) rec.diagnostics.push_back(policylang::format_diagnostics({d}));
      if (report.executable_ok) {
        res.attempts.push_back(rec);
        res.outcome = CycleOutcome::integrated;
        res.policy = PolicyVersion::derive(policy, *cand.source, PolicyOrigin::repaired, ctx.recorder.clock().now());
        break;
      }
    }
    last_diagnostics = rec.diagnostics;
    res.attempts.push_back(std::move(rec));
  }
  res.patches = patches;

  Json attempts = Json::array();
  for (const auto& a : res.attempts) attempts.push_back(to_json(a));
  Json patch_list = Json::array();
  for (const auto& p : res.patches) patch_list.push_back(p);

  if (res.policy) {
    const PolicyVersion& v = *res.policy;
    ctx.recorder.record(EntryKind::policy_update, Json{{"action", "self_update"},
                                                       {"from_version", policy.version},
                                                       {"to_version", v.version},
                                                       {"attempt", static_cast<int>(res.attempts.size())},
                                                       {"source", v.source}});
    if (ctx.store) {
      const std::string from = "v" + std::to_string(policy.version);
      const std::string to = "v" + std::to_string(v.version);
      ctx.store->write("policies/" + to + ".policy", v.source);
      const auto diff = policylang::render_diff(policy.source, v.source);
      ctx.store->write("diffs/" + from + "_" + to + ".diff",
                       diff.unified("policies/" + from + ".policy", "policies/" + to + ".policy"));
    }
  }
  Json outcome{{"outcome", to_string(res.outcome)},
               {"attempts", attempts},
               {"attempts_used", static_cast<int>(res.attempts.size())},
               {"patches", patch_list},
               {"policy_version", res.policy ? res.policy->version : policy.version}};
  if (!res.policy) outcome["feedback"] = feedback;
  ctx.recorder.record(EntryKind::patch_outcome, outcome);
  return res;
}

}  // namespace polaris::repair
