#include "polaris/eval/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "polaris/eval/metrics.hpp"
#include "polaris/llm/json_enforce.hpp"
#include "polaris/policylang/parser.hpp"

namespace polaris::eval {

Json to_json(const InstanceResult& r) {
  Json j{{"task_id", r.task_id}, {"predicted", r.predicted}, {"reasoning", r.reasoning}, {"value", r.value},
         {"correct", r.correct}};
  if (r.error) j["error"] = *r.error;
  return j;
}

Json to_json(const EvaluationResult& r) {
  Json j{{"score", r.score}, {"policy_version", r.policy_version}, {"n_failures", r.failures.size()}};
  if (r.ci) j["ci"] = {r.ci->lo, r.ci->hi};
  Json per = Json::array();
  for (const auto& i : r.per_instance) per.push_back(to_json(i));
  j["per_instance"] = per;
  return j;
}

std::string solver_system_prompt(const std::string& role, const std::vector<std::string>& require) {
  std::string keys, example;
  for (const auto& f : require) {
    keys += (keys.empty() ? "\"" : ", \"") + f + "\"";
    example += (example.empty() ? "\"" : ", \"") + f + "\": \"...\"";
  }
  return "You are " + role + ".\nReply with a single JSON object and nothing else. Required keys: " + keys +
         ".\nExample:\n{" + example + "}";
}

BackendCallHandler::BackendCallHandler(llm::Backend& backend, std::string task_id, std::string model)
    : backend_(backend), task_id_(std::move(task_id)), model_(std::move(model)) {}

std::vector<Json> BackendCallHandler::call(const policylang::CallSpec& spec) {
  llm::ChatRequest req = llm::make_request(solver_system_prompt(spec.role, spec.require), spec.prompt,
                                           "solve/" + task_id_ + "/" + spec.variable, spec.temperature, spec.n);
  req.model = model_;
  llm::ChatResponse resp;
  try {
    resp = llm::chat(backend_, req);
  } catch (const llm::TransportError& e) {
    throw policylang::CallFailure(std::string("backend unavailable: ") + e.what());
  }
  std::vector<Json> out;
  for (const auto& t : resp.texts) {
    try {
      out.push_back(llm::json_enforce(t, spec.require, {&backend_, "json_helper/" + task_id_, model_}).record);
    } catch (const llm::FormatError& e) {
      throw policylang::CallFailure(e.what());
    } catch (const llm::TransportError& e) {
      throw policylang::CallFailure(std::string("json helper unavailable: ") + e.what());
    }
  }
  return out;
}

namespace {

InstanceResult run_instance(const policylang::ProgramAST& ast, const TaskInstance& task, llm::Backend& backend,
                            const EvalOptions& options) {
  InstanceResult r;
  r.task_id = task.id;
  BackendCallHandler handler(backend, task.id, options.model);
  try {
    const auto out = policylang::execute(ast, task.input, handler);
    r.predicted = out.answer;
    r.reasoning = out.reasoning;
  } catch (const policylang::ExecutionError& e) {
    r.predicted = kExecutionErrorAnswer;
    r.reasoning = e.what();
    r.error = e.what();
    return r;
  }
  r.value = score_instance(options.metric, r.predicted, task.target);
  r.correct = r.value >= 1.0;
  return r;
}

}  // namespace

EvaluationResult finalize(std::vector<InstanceResult> per_instance, const Dataset& dataset,
                          const EvalOptions& options, int policy_version) {
  EvaluationResult res;
  res.policy_version = policy_version;
  std::vector<double> values;
  for (std::size_t i = 0; i < per_instance.size(); ++i) {
    const auto& r = per_instance[i];
    values.push_back(r.value);
    if (!r.correct) {
      const TaskInstance& t = dataset.instances[i];
      res.failures.push_back(FailureRecord{t, r.reasoning, r.predicted, t.target});
    }
  }
  res.score = mean(values);
  if (options.metric == Metric::accuracy_ci) {
    res.ci = bootstrap_ci(values, options.ci_level, options.bootstrap_samples, options.seed);
  }
  res.per_instance = std::move(per_instance);
  return res;
}

EvaluationResult evaluate(const PolicyVersion& policy, const Dataset& dataset, llm::Backend& backend,
                          const EvalOptions& options) {
  const auto ast = policylang::parse(policy.source);
  const std::size_t n = dataset.instances.size();
  std::vector<InstanceResult> results(n);

  const int workers = std::min<int>({options.parallelism, backend.max_concurrency(), static_cast<int>(n)});
  if (workers <= 1 || backend.deterministic()) {
    for (std::size_t i = 0; i < n; ++i) results[i] = run_instance(ast, dataset.instances[i], backend, options);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr fatal;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          {
            std::lock_guard lock(mu);
            if (fatal) return;
          }
          const std::size_t i = next.fetch_add(1);
          if (i >= n) return;
          try {
            results[i] = run_instance(ast, dataset.instances[i], backend, options);
          } catch (...) {
            std::lock_guard lock(mu);
            if (!fatal) fatal = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (fatal) std::rethrow_exception(fatal);
  }
  return finalize(std::move(results), dataset, options, policy.version);
}

}  // namespace polaris::eval
