#include "polaris/eval/cot_sc.hpp"

#include "polaris/core/error.hpp"
#include "polaris/core/text.hpp"
#include "polaris/eval/metrics.hpp"
#include "polaris/llm/json_enforce.hpp"
#include "polaris/policylang/interpreter.hpp"

namespace polaris::eval {

const char* const kCotScPrompt =
    "Please think step by step and then solve the task.\n\n"
    "Task: {task_input}\n\n"
    "Give your step-by-step reasoning under the key \"reasoning\" and only the final answer under the key "
    "\"answer\".";

CotScOutcome cot_sc(const TaskInstance& task, int paths, llm::Backend& backend, const std::string& model,
                    double temperature) {
  if (paths < 1) throw ParameterError("cot_sc: paths must be >= 1");
  const std::vector<std::string> require{"reasoning", "answer"};
  auto req = llm::make_request(solver_system_prompt("a helpful assistant", require),
                               policylang::render_template(kCotScPrompt, {{"task_input", task.input}}),
                               "cot_sc/" + task.id, temperature, paths);
  req.model = model;

  CotScOutcome out;
  llm::ChatResponse resp;
  try {
    resp = llm::chat(backend, req);
  } catch (const llm::TransportError& e) {
    out.failed = true;
    out.answer = kExecutionErrorAnswer;
    out.reasoning = e.what();
    return out;
  }
  std::vector<std::string> reasonings;
  for (const auto& t : resp.texts) {
    try {
      const Json rec = llm::json_enforce(t, require, {&backend, "json_helper/" + task.id, model}).record;
      const Json& a = rec["answer"];
      out.path_answers.push_back(text::trim(a.is_string() ? a.get<std::string>() : a.dump()));
      const Json& r = rec["reasoning"];
      reasonings.push_back(r.is_string() ? r.get<std::string>() : r.dump());
    } catch (const llm::FormatError&) {
    } catch (const llm::TransportError&) {
    }
  }
  if (out.path_answers.empty()) {
    out.failed = true;
    out.answer = kExecutionErrorAnswer;
    out.reasoning = "no sampled path produced a parseable answer";
    return out;
  }
  out.answer = policylang::majority_vote(out.path_answers);
  for (std::size_t i = 0; i < out.path_answers.size(); ++i) {
    if (out.path_answers[i] == out.answer) {
      out.reasoning = reasonings[i];
      break;
    }
  }
  return out;
}

EvaluationResult evaluate_cot_sc(const Dataset& dataset, int paths, llm::Backend& backend,
                                 const EvalOptions& options) {
  std::vector<InstanceResult> per;
  for (const auto& t : dataset.instances) {
    const CotScOutcome o = cot_sc(t, paths, backend, options.model);
    InstanceResult r{t.id, o.answer, o.reasoning, 0.0, false, std::nullopt};
    if (o.failed) {
      r.error = o.reasoning;
    } else {
      r.value = score_instance(options.metric, o.answer, t.target);
      r.correct = r.value >= 1.0;
    }
    per.push_back(std::move(r));
  }
  return finalize(std::move(per), dataset, options, -1);
}

}  // namespace polaris::eval
