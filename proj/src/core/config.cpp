#include "polaris/core/config.hpp"

#include <set>

#include "polaris/core/error.hpp"
#include "polaris/core/text.hpp"

namespace polaris {

namespace {

ActionSelection action_selection_from_string(std::string_view s) {
  if (s == "scheduler") return ActionSelection::scheduler;
  if (s == "llm") return ActionSelection::llm;
  throw ConfigError("unknown action_selection '" + std::string(s) + "' (expected scheduler|llm)");
}

ClockMode clock_from_string(std::string_view s) {
  if (s == "logical") return ClockMode::logical;
  if (s == "system") return ClockMode::system;
  throw ConfigError("unknown clock '" + std::string(s) + "' (expected logical|system)");
}

void reject_unknown(const Json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void read_path(const Json& j, const char* key, std::filesystem::path& out) {
  std::string s;
  read(j, key, s);
  if (j.contains(key)) out = s;
}

}  // namespace

BackendKind backend_kind_from_string(std::string_view s) {
  if (s == "scripted") return BackendKind::scripted;
  if (s == "http") return BackendKind::http;
  throw ConfigError("unknown backend kind '" + std::string(s) + "' (expected scripted|http)");
}

std::string to_string(BackendKind k) { return k == BackendKind::scripted ? "scripted" : "http"; }
std::string to_string(ActionSelection a) { return a == ActionSelection::scheduler ? "scheduler" : "llm"; }
std::string to_string(ClockMode c) { return c == ClockMode::logical ? "logical" : "system"; }

void RunConfig::validate() const {
  if (n_failures < 1) throw ConfigError("n_failures must be >= 1");
  if (memory_window < 1) throw ConfigError("memory_window must be >= 1");
  if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
  if (budget.iterations.has_value() == budget.seconds.has_value()) {
    throw ConfigError("budget must set exactly one of iterations or seconds");
  }
  if (budget.iterations && *budget.iterations < 0) throw ConfigError("budget.iterations must be >= 0");
  if (budget.seconds && *budget.seconds < 0) throw ConfigError("budget.seconds must be >= 0");
  if (backend.kind == BackendKind::scripted) {
    if (backend.script.empty()) throw ConfigError("scripted backend requires backend.script");
    if (parallelism != 1) throw ConfigError("scripted backend requires parallelism = 1");
  } else if (backend.endpoint.empty()) {
    throw ConfigError("http backend requires backend.endpoint");
  }
  if (validation_path.empty()) throw ConfigError("datasets.validation is required");
  if (test_path.empty()) throw ConfigError("datasets.test is required");
  if (policy_path.empty()) throw ConfigError("policy is required");
  if (cot_sc_paths < 1) throw ConfigError("cot_sc_paths must be >= 1");
  if (bootstrap_samples < 1000) throw ConfigError("bootstrap_samples must be >= 1000");
  if (!(ci_level > 0.0 && ci_level < 1.0)) throw ConfigError("ci_level must be in (0, 1)");
}

ClockMode RunConfig::effective_clock() const {
  if (clock) return *clock;
  return backend.kind == BackendKind::scripted ? ClockMode::logical : ClockMode::system;
}

std::string RunConfig::summary() const {
  std::string s = "N=" + std::to_string(n_failures) + " k=" + std::to_string(memory_window) +
                  " retries=" + std::to_string(max_retries) + " metric=" + to_string(metric) +
                  " integration=" + to_string(integration_mode);
  if (budget.iterations) s += " budget_iterations=" + std::to_string(*budget.iterations);
  if (budget.seconds) s += " budget_seconds=" + text::canonical_number(*budget.seconds);
  return s;
}

Json to_json(const RunConfig& c) {
  Json budget = Json::object();
  if (c.budget.iterations) budget["iterations"] = *c.budget.iterations;
  if (c.budget.seconds) budget["seconds"] = *c.budget.seconds;
  Json backend{{"kind", to_string(c.backend.kind)}};
  if (c.backend.kind == BackendKind::scripted) {
    backend["script"] = c.backend.script.generic_string();
  } else {
    backend["endpoint"] = c.backend.endpoint;
    backend["model"] = c.backend.model;
    backend["timeout_seconds"] = c.backend.timeout_seconds;
  }
  Json j{{"run_id", c.run_id},
         {"runs_dir", c.runs_dir.generic_string()},
         {"n_failures", c.n_failures},
         {"memory_window", c.memory_window},
         {"max_retries", c.max_retries},
         {"budget", budget},
         {"seed", c.seed},
         {"metric", to_string(c.metric)},
         {"backend", backend},
         {"datasets",
          {{"validation", c.validation_path.generic_string()}, {"test", c.test_path.generic_string()}}},
         {"policy", c.policy_path.generic_string()},
         {"parallelism", c.parallelism},
         {"integration_mode", to_string(c.integration_mode)},
         {"action_selection", to_string(c.action_selection)},
         {"cot_sc_paths", c.cot_sc_paths},
         {"bootstrap_samples", c.bootstrap_samples},
         {"ci_level", c.ci_level}};
  if (c.clock) j["clock"] = to_string(*c.clock);
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"run_id", "runs_dir", "n_failures", "memory_window", "max_retries", "budget", "seed", "metric",
                  "backend", "datasets", "policy", "parallelism", "integration_mode", "action_selection", "clock",
                  "cot_sc_paths", "bootstrap_samples", "ci_level"},
                 "config");
  RunConfig c;
  read(j, "run_id", c.run_id);
  read_path(j, "runs_dir", c.runs_dir);
  read(j, "n_failures", c.n_failures);
  read(j, "memory_window", c.memory_window);
  read(j, "max_retries", c.max_retries);
  read(j, "seed", c.seed);
  read(j, "parallelism", c.parallelism);
  read(j, "cot_sc_paths", c.cot_sc_paths);
  read(j, "bootstrap_samples", c.bootstrap_samples);
  read(j, "ci_level", c.ci_level);
  read_path(j, "policy", c.policy_path);

  std::string s;
  if (j.contains("metric")) {
    read(j, "metric", s);
    c.metric = metric_from_string(s);
  }
  if (j.contains("integration_mode")) {
    read(j, "integration_mode", s);
    c.integration_mode = patch_mode_from_string(s);
  }
  if (j.contains("action_selection")) {
    read(j, "action_selection", s);
    c.action_selection = action_selection_from_string(s);
  }
  if (j.contains("clock")) {
    read(j, "clock", s);
    c.clock = clock_from_string(s);
  }
  if (j.contains("budget")) {
    const Json& b = j.at("budget");
    if (!b.is_object()) throw ConfigError("budget must be an object");
    reject_unknown(b, {"iterations", "seconds"}, "budget");
    c.budget = Budget{};
    if (b.contains("iterations")) {
      int it = 0;
      read(b, "iterations", it);
      c.budget.iterations = it;
    }
    if (b.contains("seconds")) {
      double sec = 0;
      read(b, "seconds", sec);
      c.budget.seconds = sec;
    }
  }
  if (j.contains("backend")) {
    const Json& b = j.at("backend");
    if (!b.is_object()) throw ConfigError("backend must be an object");
    reject_unknown(b, {"kind", "script", "endpoint", "model", "timeout_seconds"}, "backend");
    if (b.contains("kind")) {
      read(b, "kind", s);
      c.backend.kind = backend_kind_from_string(s);
    }
    read_path(b, "script", c.backend.script);
    read(b, "endpoint", c.backend.endpoint);
    read(b, "model", c.backend.model);
    read(b, "timeout_seconds", c.backend.timeout_seconds);
  }
  if (j.contains("datasets")) {
    const Json& d = j.at("datasets");
    if (!d.is_object()) throw ConfigError("datasets must be an object");
    reject_unknown(d, {"validation", "test"}, "datasets");
    read_path(d, "validation", c.validation_path);
    read_path(d, "test", c.test_path);
  }
  return c;
}

}  // namespace polaris
