#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace polaris::cli {

struct CurvePoint {
  int iteration = 0;
  double candidate = 0.0;
  /// Running maximum of the candidate column.
  double champion = 0.0;
  std::optional<double> ci_lo;
  std::optional<double> ci_hi;
};

struct RenderedDiff {
  int from = 0;
  int to = 0;
  std::string text;
  int added = 0;
  int deleted = 0;
};

struct ReportBundle {
  std::vector<CurvePoint> curve;
  std::vector<RenderedDiff> diffs;
  std::string summary;
  std::vector<std::string> warnings;
};

/// Builds the report from persisted artifacts only (scores.csv, memory.log,
/// policies/, run.json). Damaged or missing pieces become warnings.
ReportBundle build_report(const std::filesystem::path& run_dir);

/// Replaces <run_dir>/report/ with curve.csv, diffs/*.diff and summary.txt.
void write_report(const std::filesystem::path& run_dir, const ReportBundle& bundle);

}  // namespace polaris::cli
