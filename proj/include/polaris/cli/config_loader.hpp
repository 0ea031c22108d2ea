#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "polaris/core/config.hpp"

namespace polaris::cli {

/// Values that may replace config-file keys. Filled from POLARIS_* variables
/// and from command-line flags; flags win.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> budget_iterations;
  std::optional<double> budget_seconds;
  std::optional<int> n_failures;
  std::optional<int> memory_window;
  std::optional<int> parallelism;
  std::optional<std::string> backend;
  std::optional<std::string> integration_mode;
  std::optional<std::string> script;
  std::optional<std::string> endpoint;
  std::optional<std::string> model;
  std::optional<std::string> run_id;
  std::optional<std::string> runs_dir;
};

using EnvLookup = std::function<const char*(const char*)>;

/// POLARIS_SEED, POLARIS_BUDGET_ITERATIONS, POLARIS_BUDGET_SECONDS,
/// POLARIS_N_FAILURES, POLARIS_MEMORY_WINDOW, POLARIS_PARALLELISM,
/// POLARIS_BACKEND, POLARIS_INTEGRATION_MODE, POLARIS_SCRIPT,
/// POLARIS_ENDPOINT, POLARIS_MODEL, POLARIS_RUN_ID, POLARIS_RUNS_DIR.
/// Malformed numbers throw ConfigError.
Overrides overrides_from_env(const EnvLookup& env);

/// Applies every set field. A budget override replaces the whole budget;
/// setting both budget kinds at once throws ConfigError.
void apply_overrides(RunConfig& config, const Overrides& o);

/// Reads the JSON config, resolves its relative paths against the config
/// file's directory, then applies environment and flag overrides and
/// validates. run_id defaults to the config file's stem.
RunConfig load_run_config(const std::filesystem::path& path, const Overrides& flags,
                          const EnvLookup& env = [](const char* k) { return std::getenv(k); });

}  // namespace polaris::cli
