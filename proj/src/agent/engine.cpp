#include "polaris/agent/engine.hpp"

#include "polaris/agent/goal_prompt.hpp"
#include "polaris/core/rng.hpp"
#include "polaris/core/text.hpp"
#include "polaris/llm/json_enforce.hpp"
#include "polaris/policylang/diagnostics.hpp"
#include "polaris/policylang/diff.hpp"
#include "polaris/policylang/validator.hpp"

namespace polaris::agent {

std::string to_string(ActionName a) {
  switch (a) {
    case ActionName::self_state: return "self_state";
    case ActionName::interact: return "interact";
    case ActionName::self_update: return "self_update";
    case ActionName::continue_improve: return "continue_improve";
  }
  return "?";
}

std::optional<ActionName> action_from_string(std::string_view s) {
  for (auto a : {ActionName::self_state, ActionName::interact, ActionName::self_update, ActionName::continue_improve}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

std::string to_string(RunCategory c) {
  switch (c) {
    case RunCategory::successful: return "successful";
    case RunCategory::no_improvement: return "no_improvement";
    case RunCategory::unsuccessful: return "unsuccessful";
  }
  return "?";
}

Json to_json(const RunRecord& r) {
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(); };
  return Json{{"run_id", r.run_id},
              {"config", r.config},
              {"iterations_completed", r.iterations_completed},
              {"category", to_string(r.category)},
              {"champion", to_json(r.champion)},
              {"base", {{"validation_score", r.base_validation_score}, {"test_score", opt(r.base_test_score)}}},
              {"champion_test_score", opt(r.champion_test_score)},
              {"wall_seconds", r.wall_seconds},
              {"diagnostic", r.diagnostic}};
}

namespace {

Json config_snapshot(const RunConfig& c) {
  Json j = to_json(c);
  j.erase("runs_dir");  // where the run lives is not a run parameter
  return j;
}

}  // namespace

Engine::Engine(RunConfig config, EngineInputs inputs, llm::Backend& backend, Clock& clock)
    : config_(std::move(config)),
      inputs_(std::move(inputs)),
      backend_(backend),
      clock_(clock),
      store_(config_.runs_dir / config_.run_id),
      recorder_(ledger_, clock_) {
  config_.validate();
  if (config_.run_id.empty()) throw ConfigError("run_id is empty");
  if (static_cast<std::size_t>(config_.n_failures) > inputs_.validation.size()) {
    throw ConfigError("n_failures (" + std::to_string(config_.n_failures) + ") exceeds the validation set size (" +
                      std::to_string(inputs_.validation.size()) + ")");
  }
  const auto report = policylang::validate(inputs_.base_policy);
  if (!report.executable_ok) {
    throw ConfigError("base policy is not executable:\n" + policylang::format_diagnostics(report.diagnostics));
  }
  if (std::filesystem::exists(store_.root())) {
    // a baseline computed beforehand may already sit in the run directory
    for (const auto& e : std::filesystem::directory_iterator(store_.root())) {
      if (e.path().filename() != "baseline.csv") {
        throw ConfigError("run directory already exists and is not empty: " + store_.root().string());
      }
    }
  }
  std::filesystem::create_directories(store_.root());
  ledger_ = MemoryLedger(store_.path("memory.log"));
  store_.write("config.snapshot", config_snapshot(config_).dump(2) + "\n");
  store_.write("scores.csv", "iteration,split,score,ci_lo,ci_hi,n_failures\n");

  base_ = PolicyVersion::make_base(inputs_.base_policy, clock_.now());
  policy_ = base_;
  versions_[0] = base_;
  store_.write("policies/v0.policy", base_.source);
}

AgentState Engine::self_inspect() {
  AgentState s{policy_, kGoalPrompt, config_.summary(),
               ledger_.context_window(static_cast<std::size_t>(config_.memory_window))};
  Json window = Json::array();
  for (const auto& e : s.ledger_window) window.push_back({{"kind", to_string(e.kind)}, {"iteration", e.iteration}});
  recorder_.record(EntryKind::action, Json{{"action", "self_state"},
                                           {"policy_version", policy_.version},
                                           {"config", s.config_summary},
                                           {"window", window}});
  return s;
}

const eval::EvaluationResult& Engine::evaluate(const PolicyVersion& p, const eval::Dataset& ds) {
  const auto key = std::make_pair(p.version, eval::to_string(ds.split));
  auto it = eval_cache_.find(key);
  if (it != eval_cache_.end()) return it->second;
  eval::EvalOptions opt;
  opt.metric = config_.metric;
  opt.parallelism = config_.parallelism;
  opt.model = config_.backend.model;
  opt.bootstrap_samples = config_.bootstrap_samples;
  opt.ci_level = config_.ci_level;
  opt.seed = derive_seed(config_.seed, "ci/" + key.second + "/v" + std::to_string(p.version));
  return eval_cache_.emplace(key, eval::evaluate(p, ds, backend_, opt)).first->second;
}

const eval::EvaluationResult& Engine::evaluate_current() { return evaluate(policy_, inputs_.validation); }

void Engine::record_score(int iteration, const std::string& split, const eval::EvaluationResult& r) {
  std::string row = std::to_string(iteration) + "," + split + "," + text::fixed(r.score) + ",";
  if (r.ci) row += text::fixed(r.ci->lo) + "," + text::fixed(r.ci->hi);
  else row += ",";
  row += "," + std::to_string(r.failures.size()) + "\n";
  store_.append("scores.csv", row);
}

namespace {

Json feedback_payload(const std::string& action, const std::string& split, const eval::EvaluationResult& r) {
  Json failed = Json::array();
  for (const auto& f : r.failures) failed.push_back(f.task.id);
  Json j{{"action", action},
         {"split", split},
         {"policy_version", r.policy_version},
         {"score", r.score},
         {"n_failures", r.failures.size()},
         {"failed_tasks", failed}};
  if (r.ci) j["ci"] = {r.ci->lo, r.ci->hi};
  return j;
}

}  // namespace

void Engine::begin() {
  started_ = true;
  t0_ = std::chrono::steady_clock::now();
  recorder_.set_iteration(0);
  self_inspect();
  const auto& r = evaluate_current();
  recorder_.record(EntryKind::feedback, feedback_payload("evaluate", "validation", r));
  record_score(0, "validation", r);
  champion_ = Champion::first(0, policy_.version, r.score);
}

void Engine::interact() {
  const int t = recorder_.iteration();
  const eval::EvaluationResult r = evaluate_current();
  const Json feedback = feedback_payload("interact", "validation", r);
  recorder_.record(EntryKind::feedback, feedback);
  if (r.failures.empty()) nothing_to_repair_ = true;

  const AgentState state{policy_, kGoalPrompt, config_.summary(),
                         ledger_.context_window(static_cast<std::size_t>(config_.memory_window))};
  repair::RepairContext ctx{backend_, recorder_, &store_, config_.backend.model, config_.integration_mode,
                            config_.max_retries};
  repair::RepairCycleRecord cycle;
  PolicyVersion next = repair::repair_policy(policy_, state, r.failures, feedback, config_, strategies_, ctx, &cycle);
  cycles_.push_back(cycle);
  if (cycle.outcome == repair::CycleOutcome::integrated) {
    policy_ = std::move(next);
    versions_[policy_.version] = policy_;
  }
  const auto& cand = evaluate_current();
  record_score(t, "validation", cand);
  champion_ = update_champion(champion_, t, policy_.version, cand.score);
}

void Engine::self_update(const std::string& code) {
  const auto report = policylang::validate(code);
  if (!report.executable_ok) {
    Json diags = Json::array();
    for (const auto& d : report.diagnostics) diags.push_back(policylang::format_diagnostics({d}));
    recorder_.record(EntryKind::action, Json{{"action", "self_update"},
                                             {"rejected", true},
                                             {"policy_version", policy_.version},
                                             {"diagnostics", diags}});
    return;
  }
  const PolicyVersion prev = policy_;
  policy_ = PolicyVersion::derive(prev, code, PolicyOrigin::repaired, clock_.now());
  versions_[policy_.version] = policy_;
  recorder_.record(EntryKind::policy_update, Json{{"action", "self_update"},
                                                  {"from_version", prev.version},
                                                  {"to_version", policy_.version},
                                                  {"source", policy_.source}});
  const std::string from = "v" + std::to_string(prev.version), to = "v" + std::to_string(policy_.version);
  store_.write("policies/" + to + ".policy", policy_.source);
  store_.write("diffs/" + from + "_" + to + ".diff",
               policylang::render_diff(prev.source, policy_.source)
                   .unified("policies/" + from + ".policy", "policies/" + to + ".policy"));
}

void Engine::execute_action(const Action& action) {
  if (!started_) begin();
  switch (action.name) {
    case ActionName::self_state:
      self_inspect();
      break;
    case ActionName::interact:
      interact();
      break;
    case ActionName::self_update:
      self_update(action.code);
      break;
    case ActionName::continue_improve:
      recorder_.record(EntryKind::action, Json{{"action", "continue_improve"},
                                               {"policy_version", policy_.version},
                                               {"champion_version", champion_.policy_version}});
      break;
  }
}

bool Engine::budget_left(int next_round) const {
  if (config_.budget.iterations) return next_round <= *config_.budget.iterations;
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  return elapsed < config_.budget.seconds.value_or(0.0);
}

std::vector<Action> Engine::decide_actions(int round) {
  static const std::vector<Action> fallback{
      {ActionName::self_state, ""}, {ActionName::interact, ""}, {ActionName::continue_improve, ""}};
  const auto window = ledger_.context_window(static_cast<std::size_t>(config_.memory_window));
  Json w = Json::array();
  for (const auto& e : window) w.push_back(to_json(e));
  const auto& r = evaluate_current();
  const Json state{{"policy_version", policy_.version},
                   {"policy", policy_.source},
                   {"config", config_.summary()},
                   {"validation_score", r.score},
                   {"n_failures", r.failures.size()},
                   {"memory", w}};
  auto req = llm::make_request(std::string(kGoalPrompt) + "\n\n" + kActionSelectionSuffix, state.dump(2),
                               "decide/" + std::to_string(round));
  req.model = config_.backend.model;
  std::vector<Action> out;
  try {
    const auto resp = llm::chat(backend_, req);
    const Json rec =
        llm::json_enforce(resp.texts.front(), {"actions"},
                          {&backend_, "json_helper/decide/" + std::to_string(round), config_.backend.model})
            .record;
    if (rec["actions"].is_array()) {
      for (const auto& a : rec["actions"]) {
        const std::string name = a.is_object() ? a.value("name", "") : (a.is_string() ? a.get<std::string>() : "");
        auto parsed = action_from_string(name);
        if (!parsed) {
          recorder_.record(EntryKind::action, Json{{"action", "unknown"}, {"raw", a}});
          continue;
        }
        out.push_back({*parsed, a.is_object() ? a.value("code", "") : ""});
      }
    }
  } catch (const llm::FormatError& e) {
    recorder_.record(EntryKind::action, Json{{"action", "decide"}, {"error", e.what()}, {"fallback", "scheduler"}});
    return fallback;
  } catch (const llm::TransportError& e) {
    recorder_.record(EntryKind::action, Json{{"action", "decide"}, {"error", e.what()}, {"fallback", "scheduler"}});
    return fallback;
  }
  if (out.empty()) out.push_back({ActionName::continue_improve, ""});
  return out;
}

void Engine::finish(RunRecord& rec) {
  const PolicyVersion& champ = versions_.at(champion_.policy_version);
  const auto& base_test = evaluate(base_, inputs_.test);
  recorder_.record(EntryKind::feedback, feedback_payload("evaluate", "test", base_test));
  record_score(0, "test", base_test);
  rec.base_test_score = base_test.score;
  const auto& champ_test = evaluate(champ, inputs_.test);
  if (champ.version != base_.version) {
    recorder_.record(EntryKind::feedback, feedback_payload("evaluate", "test", champ_test));
    record_score(champion_.iteration, "test", champ_test);
  }
  rec.champion_test_score = champ_test.score;
  rec.category = champ_test.score > base_test.score ? RunCategory::successful : RunCategory::no_improvement;
  store_.write("champion.txt", "policy_version=" + std::to_string(champ.version) + "\niteration=" +
                                   std::to_string(champion_.iteration) + "\nvalidation_score=" +
                                   text::fixed(champion_.validation_score) + "\ntest_score=" +
                                   text::fixed(champ_test.score) + "\npolicy=policies/v" +
                                   std::to_string(champ.version) + ".policy\n");
}

RunRecord Engine::run() {
  RunRecord rec;
  rec.run_id = config_.run_id;
  rec.config = config_snapshot(config_);
  try {
    begin();
    rec.base_validation_score = champion_.validation_score;
    for (int t = 1; budget_left(t) && !nothing_to_repair_; ++t) {
      recorder_.set_iteration(t);
      const std::vector<Action> actions =
          config_.action_selection == ActionSelection::llm
              ? decide_actions(t)
              : std::vector<Action>{{ActionName::self_state, ""},
                                    {ActionName::interact, ""},
                                    {ActionName::continue_improve, ""}};
      for (const auto& a : actions) {
        execute_action(a);
        if (a.name == ActionName::continue_improve || nothing_to_repair_) break;
      }
      rec.iterations_completed = t;
    }
    finish(rec);
  } catch (const std::exception& e) {
    rec.category = RunCategory::unsuccessful;
    rec.diagnostic = e.what();
  }
  rec.champion = champion_;
  if (config_.effective_clock() == ClockMode::system) {
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }
  store_.write("run.json", to_json(rec).dump(2) + "\n");
  return rec;
}

}  // namespace polaris::agent
