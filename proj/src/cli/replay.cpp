#include "polaris/cli/replay.hpp"

#include <stdlib.h>

#include <algorithm>
#include <set>
#include <vector>

#include "polaris/cli/commands.hpp"
#include "polaris/core/artifacts.hpp"
#include "polaris/core/error.hpp"

namespace polaris::cli {

namespace fs = std::filesystem;

namespace {

int rank(const std::string& rel) {
  static const std::vector<std::string> order = {"scores.csv",   "run.json",    "champion.txt",
                                                 "policies/",    "diffs/",      "patches/",
                                                 "strategies/",  "reflections/", "memory.log",
                                                 "config.snapshot"};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& o = order[i];
    if (o.back() == '/' ? rel.rfind(o, 0) == 0 : rel == o) return static_cast<int>(i);
  }
  return static_cast<int>(order.size());
}

bool excluded(const std::string& rel) { return rel == "baseline.csv" || rel.rfind("report/", 0) == 0; }

std::set<std::string> list_files(const fs::path& root) {
  std::set<std::string> out;
  if (!fs::is_directory(root)) return out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), root).generic_string();
    if (!excluded(rel)) out.insert(rel);
  }
  return out;
}

class ScratchDir {
 public:
  ScratchDir() {
    std::string tmpl = (fs::temp_directory_path() / "polaris-replay-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw IoError("cannot create a scratch directory under " + fs::temp_directory_path().string());
    path_ = tmpl;
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

ReplayResult compare_run_dirs(const fs::path& original, const fs::path& replayed) {
  const auto a = list_files(original);
  const auto b = list_files(replayed);
  std::vector<std::string> all(a.begin(), a.end());
  for (const auto& f : b) {
    if (!a.count(f)) all.push_back(f);
  }
  std::stable_sort(all.begin(), all.end(), [](const std::string& x, const std::string& y) {
    const int rx = rank(x), ry = rank(y);
    return rx != ry ? rx < ry : x < y;
  });
  for (const auto& rel : all) {
    if (!a.count(rel)) return {false, rel, "present only in the replay"};
    if (!b.count(rel)) return {false, rel, "missing from the replay"};
    const auto x = read_file(original / rel);
    const auto y = read_file(replayed / rel);
    if (x == y) continue;
    std::size_t i = 0;
    while (i < x.size() && i < y.size() && x[i] == y[i]) ++i;
    return {false, rel, "first differing byte at offset " + std::to_string(i)};
  }
  return {true, {}, std::to_string(all.size()) + " artifacts identical"};
}

ReplayResult replay_run(const fs::path& run_dir, std::optional<std::uint64_t> seed) {
  const fs::path snap = run_dir / "config.snapshot";
  if (!fs::is_regular_file(snap)) throw ConfigError("no config.snapshot in " + run_dir.string());
  const Json j = Json::parse(read_file(snap), nullptr, false);
  if (j.is_discarded()) throw ConfigError("config.snapshot is not valid JSON");
  RunConfig config = run_config_from_json(j);
  if (config.backend.kind != BackendKind::scripted) {
    throw ConfigError("only scripted runs can be replayed (backend is " + to_string(config.backend.kind) + ")");
  }
  if (seed) config.seed = *seed;
  ScratchDir scratch;
  config.runs_dir = scratch.path();
  config.validate();
  execute_run(config);
  return compare_run_dirs(run_dir, scratch.path() / config.run_id);
}

}  // namespace polaris::cli
