#include "polaris/cli/config_loader.hpp"

#include "polaris/core/artifacts.hpp"
#include "polaris/core/error.hpp"
#include "polaris/core/text.hpp"

namespace polaris::cli {

namespace fs = std::filesystem;

namespace {

template <typename T>
std::optional<T> env_number(const EnvLookup& env, const char* key) {
  const char* v = env(key);
  if (!v || !*v) return std::nullopt;
  const auto d = text::parse_number(v);
  if (!d) throw ConfigError(std::string(key) + " is not a number: '" + v + "'");
  if constexpr (std::is_integral_v<T>) {
    if (*d != static_cast<double>(static_cast<long long>(*d))) {
      throw ConfigError(std::string(key) + " must be an integer: '" + v + "'");
    }
    if (std::is_unsigned_v<T> && *d < 0) throw ConfigError(std::string(key) + " must be non-negative");
  }
  return static_cast<T>(*d);
}

std::optional<std::string> env_string(const EnvLookup& env, const char* key) {
  const char* v = env(key);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  if (p.empty() || p.is_absolute()) return p;
  return (base / p).lexically_normal();
}

}  // namespace

Overrides overrides_from_env(const EnvLookup& env) {
  Overrides o;
  o.seed = env_number<std::uint64_t>(env, "POLARIS_SEED");
  o.budget_iterations = env_number<int>(env, "POLARIS_BUDGET_ITERATIONS");
  o.budget_seconds = env_number<double>(env, "POLARIS_BUDGET_SECONDS");
  o.n_failures = env_number<int>(env, "POLARIS_N_FAILURES");
  o.memory_window = env_number<int>(env, "POLARIS_MEMORY_WINDOW");
  o.parallelism = env_number<int>(env, "POLARIS_PARALLELISM");
  o.backend = env_string(env, "POLARIS_BACKEND");
  o.integration_mode = env_string(env, "POLARIS_INTEGRATION_MODE");
  o.script = env_string(env, "POLARIS_SCRIPT");
  o.endpoint = env_string(env, "POLARIS_ENDPOINT");
  o.model = env_string(env, "POLARIS_MODEL");
  o.run_id = env_string(env, "POLARIS_RUN_ID");
  o.runs_dir = env_string(env, "POLARIS_RUNS_DIR");
  return o;
}

void apply_overrides(RunConfig& c, const Overrides& o) {
  if (o.budget_iterations && o.budget_seconds) {
    throw ConfigError("give either an iteration budget or a seconds budget, not both");
  }
  if (o.seed) c.seed = *o.seed;
  if (o.budget_iterations) c.budget = Budget{*o.budget_iterations, std::nullopt};
  if (o.budget_seconds) c.budget = Budget{std::nullopt, *o.budget_seconds};
  if (o.n_failures) c.n_failures = *o.n_failures;
  if (o.memory_window) c.memory_window = *o.memory_window;
  if (o.parallelism) c.parallelism = *o.parallelism;
  if (o.backend) c.backend.kind = backend_kind_from_string(*o.backend);
  if (o.integration_mode) c.integration_mode = patch_mode_from_string(*o.integration_mode);
  if (o.script) c.backend.script = fs::absolute(*o.script).lexically_normal();
  if (o.endpoint) c.backend.endpoint = *o.endpoint;
  if (o.model) c.backend.model = *o.model;
  if (o.run_id) c.run_id = *o.run_id;
  if (o.runs_dir) c.runs_dir = fs::absolute(*o.runs_dir).lexically_normal();
}

RunConfig load_run_config(const fs::path& path, const Overrides& flags, const EnvLookup& env) {
  if (!fs::is_regular_file(path)) throw ConfigError("config file not found: " + path.string());
  Json j = Json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file is not valid JSON: " + path.string());
  RunConfig c = run_config_from_json(j);

  const fs::path base = fs::absolute(path).parent_path();
  c.runs_dir = resolve(c.runs_dir, base);
  c.backend.script = resolve(c.backend.script, base);
  c.validation_path = resolve(c.validation_path, base);
  c.test_path = resolve(c.test_path, base);
  c.policy_path = resolve(c.policy_path, base);
  if (c.run_id.empty()) c.run_id = path.stem().string();

  apply_overrides(c, overrides_from_env(env));
  apply_overrides(c, flags);
  c.validate();
  return c;
}

}  // namespace polaris::cli
