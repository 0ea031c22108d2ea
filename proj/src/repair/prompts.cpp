#include "polaris/repair/prompts.hpp"

#include "polaris/policylang/interpreter.hpp"

namespace polaris::repair {

// Operator prompt texts. They speak of "policy code": the policy language is
// what the engine runs.

const char* const kAnalyzeFailuresPrompt =
    R"(You are analyzing why the current policy failed on a given task. Your goal is to identify the policy's shortcomings and propose actionable improvements.

Inputs:
- Question: {question}
- Your Reasoning: {reasoning}
- Your Answer: {answer}
- Correct Answer: {correct_answer}
- Policy: {current_policy}

Carefully reflect on why the policy produced the wrong result. Your reflection must include three elements:
1. A clear explanation of the failure. Examine how the policy's logic or structure caused the error.
2. Step-by-step suggestions on how the policy could be revised to solve the task.
3. Advice to prevent similar failures in the future.)";

const char* const kStrategySynthesisPrompt =
    R"(You are an expert AI engineer analyzing self-reflection on policy from multiple failed tasks.

Inputs:
- Reflections: {combined_reflections}
- Current Policy: {current_policy}
- Prior Strategies: {prior_strategies}

Your task is to extract *1-2 new* generalizable and non-redundant policy improvement strategies from the task-level reflections.

Rules:
- Do not repeat or restate any of the previously extracted strategies.
- The strategy should target the root cause behind the failures observed in the reflections.
- It must be reusable across tasks and focused on policy improvements (not tied to one failure instance).
- Do not copy raw reflections; abstract reflections into a reusable *insight*.
- Write this as if giving coding instructions to another engineer.
- Output only *1-2* new generalizable improvement strategies, written as short, clear statements.)";

const char* const kPatchGenerationPrompt =
    R"(You are assisting in improving the current policy.

Inputs:
- Current Policy: {current_policy}
- Repair Strategies: {repair_strategies}

Your task:
- For each strategy, propose a minimal **code patch** to implement it.
- Show only new or modified lines, do not repeat unchanged code.
- No explanations.

Format your response as:
### Strategy: <chosen strategy>
### Patch:
<only the modified or new lines of policy code>)";

const char* const kUpdatePolicyPrompt =
    R"(You are a coding assistant. Your task is to apply all the provided code patches to the current policy and return the fully updated version of the policy.

Current policy: {current_policy}

Rules:
- Insert or replace ONLY the lines shown in the patch.
- Keep ALL other lines of the policy unchanged.
- Do NOT remove or overwrite existing logic unless explicitly replaced by the patch.
- Ensure ALL patches are correctly integrated (e.g., imports, variables, helper functions must exist).
- If a patch introduces new logic that requires dependencies (imports, helper methods, variables), ADD them safely.
- Resolve conflicts so the final policy is consistent and executable.
- The updated policy MUST be logically correct, consistent, and error-free.
- Always return the FULL policy wrapped in:
```policy
<code patch here>
```)";

const char* const kAnchoredPatchFormat =
    R"(The policy is shown with line numbers ("  3| ..."); the numbers are not part of the code.
Write every patch as one or more anchored edits against those line numbers:
@ REPLACE a-b      then the replacement lines
@ INSERT AFTER a   then the new lines (a = 0 inserts at the top)
@ DELETE a-b
Edits of one response must not overlap. Policy statements: LET, PROMPT <<< ... >>>, CALL, EXTRACT, VOTE, IF ... THEN ... ELSE ... END, RETURN answer=...)";

const char* const kReflectionReask =
    R"(Your reflection is missing some of the three required elements. Rewrite it using exactly these numbered sections:
1. Explanation: a clear explanation of the failure.
2. Suggestions: step-by-step suggestions on how the policy could be revised.
3. Advice: advice to prevent similar failures in the future.)";

namespace {

std::string render(const char* tmpl, const std::map<std::string, std::string>& vars) {
  return policylang::render_template(tmpl, vars);
}

std::string numbered_strategies(const std::vector<Strategy>& strategies) {
  std::string s;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    s += "\n" + std::to_string(i + 1) + ". " + strategies[i].text;
  }
  return s;
}

}  // namespace

std::string analyze_failures_prompt(const FailureRecord& f, const std::string& policy_source) {
  return render(kAnalyzeFailuresPrompt, {{"question", f.task.input},
                                         {"reasoning", f.reasoning},
                                         {"answer", f.predicted},
                                         {"correct_answer", f.reference},
                                         {"current_policy", "\n" + policy_source}});
}

std::string strategy_synthesis_prompt(const std::vector<Reflection>& reflections, const std::string& policy_source,
                                      const std::vector<Strategy>& prior) {
  std::string combined;
  for (const auto& r : reflections) {
    combined += "\n[task " + r.task_id + "]\n1. Explanation: " + r.diagnosis + "\n2. Suggestions: " + r.revision +
                "\n3. Advice: " + r.prevention + "\n";
  }
  std::string prior_text;
  for (const auto& s : prior) prior_text += "\n- " + s.text;
  if (prior_text.empty()) prior_text = "none";
  return render(kStrategySynthesisPrompt, {{"combined_reflections", combined},
                                           {"current_policy", "\n" + policy_source},
                                           {"prior_strategies", prior_text}});
}

std::string patch_generation_prompt(const std::string& policy_source, const std::vector<Strategy>& strategies,
                                    PatchMode mode) {
  const std::string shown = mode == PatchMode::anchored ? policylang::number_lines(policy_source) : policy_source;
  std::string p = render(kPatchGenerationPrompt,
                         {{"current_policy", "\n" + shown}, {"repair_strategies", numbered_strategies(strategies)}});
  if (mode == PatchMode::anchored) p += "\n\n" + std::string(kAnchoredPatchFormat);
  return p;
}

std::string update_policy_prompt(const std::string& policy_source, const std::vector<Patch>& patches,
                                 const std::vector<Strategy>& strategies) {
  std::string p = render(kUpdatePolicyPrompt, {{"current_policy", "\n" + policy_source}});
  p += "\n\nCode patches:\n";
  for (const auto& patch : patches) {
    std::string label = patch.strategy_id;
    for (const auto& s : strategies) {
      if (s.id == patch.strategy_id) label = s.text;
    }
    p += "### Strategy: " + label + "\n### Patch:\n" + patch.body;
    if (!patch.body.empty() && patch.body.back() != '\n') p += "\n";
  }
  return p;
}

std::string patch_reask_prompt(const std::vector<std::pair<std::string, std::string>>& problems, PatchMode mode) {
  std::string p = "Some patches could not be used:\n";
  for (const auto& [strategy, why] : problems) p += "- " + strategy + ": " + why + "\n";
  p += "Return corrected patches for these strategies only, in the same format (### Strategy: / ### Patch:), "
       "with no explanations.";
  if (mode == PatchMode::anchored) p += "\n\n" + std::string(kAnchoredPatchFormat);
  return p;
}

std::string patch_retry_prompt(const std::vector<std::string>& diagnostics) {
  std::string p = "Applying these patches to the current policy did not give an executable policy:\n";
  for (const auto& d : diagnostics) p += "- " + d + "\n";
  p += "Return corrected patches for every strategy in the same format (### Strategy: / ### Patch:), with no "
       "explanations.\n\n" +
       std::string(kAnchoredPatchFormat);
  return p;
}

}  // namespace polaris::repair
