#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <cstdint>

namespace polaris::cli {

struct ReplayResult {
  bool identical = false;
  /// Relative path of the first artifact that differs (or is missing on one side).
  std::string first_divergence;
  std::string detail;
};

/// Re-executes a scripted run from its config.snapshot into a scratch
/// directory and byte-compares every artifact. Throws ConfigError when the
/// snapshot is missing or names a non-replayable backend.
ReplayResult replay_run(const std::filesystem::path& run_dir, std::optional<std::uint64_t> seed = std::nullopt);

/// Artifact comparison order: headline files first, then lineage, then the rest.
ReplayResult compare_run_dirs(const std::filesystem::path& original, const std::filesystem::path& replayed);

}  // namespace polaris::cli
