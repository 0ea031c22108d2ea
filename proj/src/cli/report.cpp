#include "polaris/cli/report.hpp"

#include <algorithm>

#include "polaris/core/artifacts.hpp"
#include "polaris/core/error.hpp"
#include "polaris/core/text.hpp"
#include "polaris/core/types.hpp"
#include "polaris/policylang/diff.hpp"

namespace polaris::cli {

namespace fs = std::filesystem;

namespace {

std::optional<std::string> try_read(const fs::path& p) {
  if (!fs::is_regular_file(p)) return std::nullopt;
  try {
    return read_file(p);
  } catch (const IoError&) {
    return std::nullopt;
  }
}

struct ScoreRow {
  int iteration = 0;
  std::string split;
  double score = 0.0;
  std::optional<double> lo, hi;
};

std::vector<ScoreRow> read_scores(const fs::path& run_dir, std::vector<std::string>& warnings) {
  std::vector<ScoreRow> rows;
  const auto content = try_read(run_dir / "scores.csv");
  if (!content) {
    warnings.push_back("scores.csv is missing");
    return rows;
  }
  const auto lines = text::split_lines(*content);
  const bool complete_tail = text::ends_with_newline(*content);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = "scores.csv line " + std::to_string(i + 1);
    if (i + 1 == lines.size() && !complete_tail) {
      warnings.push_back(where + " is truncated; ignored");
      break;
    }
    const auto f = text::split(lines[i], ',');
    if (f.size() != 6) {
      warnings.push_back(where + " has " + std::to_string(f.size()) + " fields; ignored");
      continue;
    }
    const auto it = text::parse_number(f[0]);
    const auto sc = text::parse_number(f[2]);
    if (!it || !sc) {
      warnings.push_back(where + " is malformed; ignored");
      continue;
    }
    ScoreRow r{static_cast<int>(*it), f[1], *sc, text::parse_number(f[3]), text::parse_number(f[4])};
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

ReportBundle build_report(const fs::path& run_dir) {
  ReportBundle b;
  if (!fs::is_directory(run_dir)) throw IoError("run directory not found: " + run_dir.string());

  const auto rows = read_scores(run_dir, b.warnings);
  double best = 0.0;
  std::vector<const ScoreRow*> tests;
  for (const auto& r : rows) {
    if (r.split != "validation") {
      tests.push_back(&r);
      continue;
    }
    best = b.curve.empty() ? r.score : std::max(best, r.score);
    b.curve.push_back({r.iteration, r.score, best, r.lo, r.hi});
  }

  // lineage from the ledger
  if (const auto log = try_read(run_dir / "memory.log")) {
    int lineno = 0;
    for (const auto& line : text::split_lines(*log)) {
      ++lineno;
      const Json j = Json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        b.warnings.push_back("memory.log line " + std::to_string(lineno) + " is not JSON; ignored");
        continue;
      }
      if (j.value("kind", "") != "policy_update") continue;
      const Json& p = j.value("payload", Json::object());
      if (!p.contains("from_version") || !p.contains("to_version")) {
        b.warnings.push_back("memory.log line " + std::to_string(lineno) + ": policy_update without versions");
        continue;
      }
      RenderedDiff d;
      d.from = p["from_version"].get<int>();
      d.to = p["to_version"].get<int>();
      const std::string from_name = "policies/v" + std::to_string(d.from) + ".policy";
      const std::string to_name = "policies/v" + std::to_string(d.to) + ".policy";
      auto old_src = try_read(run_dir / from_name);
      auto new_src = try_read(run_dir / to_name);
      if (!new_src && p.contains("source")) new_src = p["source"].get<std::string>();
      if (!old_src || !new_src) {
        b.warnings.push_back("cannot render v" + std::to_string(d.from) + " -> v" + std::to_string(d.to) +
                             ": policy file missing");
        continue;
      }
      const auto view = policylang::render_diff(*old_src, *new_src);
      d.text = view.unified(from_name, to_name);
      d.added = view.added;
      d.deleted = view.deleted;
      b.diffs.push_back(std::move(d));
    }
  } else {
    b.warnings.push_back("memory.log is missing");
  }

  std::string s;
  const auto run_json = try_read(run_dir / "run.json");
  const Json run = run_json ? Json::parse(*run_json, nullptr, false) : Json();
  if (run.is_object()) {
    s += "run_id: " + run.value("run_id", "") + "\n";
    s += "category: " + run.value("category", "") + "\n";
    s += "iterations_completed: " + std::to_string(run.value("iterations_completed", 0)) + "\n";
    if (!run.value("diagnostic", "").empty()) s += "diagnostic: " + run.value("diagnostic", "") + "\n";
  } else {
    b.warnings.push_back("run.json is missing or unreadable (partial run)");
    s += "run_id: " + run_dir.filename().string() + "\ncategory: incomplete\n";
  }
  if (!b.curve.empty()) {
    s += "base validation score: " + text::fixed(b.curve.front().candidate) + "\n";
    s += "champion validation score: " + text::fixed(b.curve.back().champion) + "\n";
  }
  for (const auto* t : tests) {
    s += "test score (iteration " + std::to_string(t->iteration) + "): " + text::fixed(t->score) + "\n";
  }
  s += "curve points: " + std::to_string(b.curve.size()) + "\n";
  s += "integrated versions: " + std::to_string(b.diffs.size()) + "\n";
  for (const auto& d : b.diffs) {
    s += "  v" + std::to_string(d.from) + " -> v" + std::to_string(d.to) + ": +" + std::to_string(d.added) + " -" +
         std::to_string(d.deleted) + "\n";
  }
  for (const auto& w : b.warnings) s += "warning: " + w + "\n";
  b.summary = s;
  return b;
}

void write_report(const fs::path& run_dir, const ReportBundle& b) {
  const fs::path out = run_dir / "report";
  fs::remove_all(out);
  std::string csv = "iteration,candidate,champion,ci_lo,ci_hi\n";
  for (const auto& p : b.curve) {
    csv += std::to_string(p.iteration) + "," + text::fixed(p.candidate) + "," + text::fixed(p.champion) + "," +
           (p.ci_lo ? text::fixed(*p.ci_lo) : "") + "," + (p.ci_hi ? text::fixed(*p.ci_hi) : "") + "\n";
  }
  write_file(out / "curve.csv", csv);
  fs::create_directories(out / "diffs");
  for (const auto& d : b.diffs) {
    write_file(out / "diffs" / ("v" + std::to_string(d.from) + "_v" + std::to_string(d.to) + ".diff"), d.text);
  }
  write_file(out / "summary.txt", b.summary);
}

}  // namespace polaris::cli
