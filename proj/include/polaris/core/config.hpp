#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "polaris/core/types.hpp"

namespace polaris {

enum class BackendKind { scripted, http };
enum class ActionSelection { scheduler, llm };
enum class ClockMode { logical, system };

struct BackendConfig {
  BackendKind kind = BackendKind::scripted;
  std::filesystem::path script;  // scripted
  std::string endpoint;          // http, e.g. http://localhost:8000/v1
  std::string model;
  double timeout_seconds = 300.0;
};

/// Exactly one of the two limits is set.
struct Budget {
  std::optional<int> iterations;
  std::optional<double> seconds;
};

struct RunConfig {
  std::string run_id;
  std::filesystem::path runs_dir = "runs";

  int n_failures = 3;     // N
  int memory_window = 6;  // k
  int max_retries = 3;    // n
  Budget budget{std::nullopt, 36000.0};
  std::uint64_t seed = 0;
  Metric metric = Metric::accuracy_ci;
  BackendConfig backend;

  std::filesystem::path validation_path;
  std::filesystem::path test_path;
  std::filesystem::path policy_path;

  int parallelism = 1;
  PatchMode integration_mode = PatchMode::anchored;
  ActionSelection action_selection = ActionSelection::scheduler;
  /// Unset: logical for the scripted backend, system otherwise.
  std::optional<ClockMode> clock;

  int cot_sc_paths = 5;
  int bootstrap_samples = 2000;
  double ci_level = 0.95;

  /// Structural checks that do not need the datasets. Throws ConfigError.
  void validate() const;

  ClockMode effective_clock() const;

  /// One-line summary used inside agent state and prompts.
  std::string summary() const;
};

Json to_json(const RunConfig& c);
/// Keys missing from `j` keep their defaults. Unknown keys throw ConfigError.
RunConfig run_config_from_json(const Json& j);

std::string to_string(BackendKind k);
/// Throws ConfigError for anything but "scripted" / "http".
BackendKind backend_kind_from_string(std::string_view s);
std::string to_string(ActionSelection a);
std::string to_string(ClockMode c);

}  // namespace polaris
