#include <doctest.h>

#include <sstream>

#include "oracle.hpp"
#include "polaris/agent/engine.hpp"
#include "polaris/cli/commands.hpp"
#include "polaris/core/clock.hpp"
#include "polaris/core/artifacts.hpp"
#include "polaris/core/text.hpp"

using namespace polaris;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "polaris");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = polaris::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string golden_json() { return (testing::fixture_dir() / "golden" / "golden.json").string(); }

/// Writes a config next to a fresh script; datasets and policy come from the golden fixture.
std::string config_with_script(const std::filesystem::path& dir, const std::string& script) {
  Json j = Json::parse(read_file(golden_json()));
  const auto g = testing::fixture_dir() / "golden";
  j["datasets"] = {{"validation", (g / "validation.ndjson").string()}, {"test", (g / "test.ndjson").string()}};
  j["policy"] = (g / "base.policy").string();
  j["backend"]["script"] = "script.ndjson";
  j.erase("run_id");
  write_file(dir / "script.ndjson", script);
  write_file(dir / "cfg.json", j.dump(2));
  return (dir / "cfg.json").string();
}

}  // namespace

TEST_CASE("golden run exits 0 and reports success") {
  testing::TempDir tmp;
  const auto r = invoke({"run", "--config", golden_json(), "--runs-dir", tmp.path().string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("category: successful") != std::string::npos);
  CHECK(r.out.find("champion: v2, validation 0.9500, test 0.9400") != std::string::npos);
  CHECK(std::filesystem::exists(tmp.path() / "golden" / "run.json"));
}

TEST_CASE("zero budget exits 0 without improvement") {
  testing::TempDir tmp;
  const auto g = testing::GoldenScenario::load(testing::fixture_dir() / "golden");
  testing::TagOracle oracle(g.responder());
  {
    testing::TempDir scratch;
    LogicalClock clock;
    RunConfig cfg = g.config(scratch.path());
    cfg.budget = {0, std::nullopt};
    agent::Engine(cfg, {g.validation, g.test, g.base_policy}, oracle, clock).run();
  }
  const auto cfg = config_with_script(tmp.path(), testing::to_ndjson(oracle.transcript()));
  const auto r = invoke({"run", "--config", cfg, "--runs-dir", tmp.path().string(), "--budget-iterations", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("category: no_improvement") != std::string::npos);
}

TEST_CASE("configuration errors exit 2") {
  testing::TempDir tmp;
  CHECK(invoke({"run", "--config", golden_json(), "--runs-dir", tmp.path().string(), "--n-failures", "21"}).code == 2);
  CHECK(invoke({"run", "--config", "/nonexistent.json"}).code == 2);
  CHECK(invoke({"run"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"run", "--config", golden_json(), "--budget-iterations", "1", "--budget-seconds", "5"}).code == 2);
  CHECK(invoke({"run", "--config", golden_json(), "--backend", "grpc"}).code == 2);
  Json j = Json::parse(read_file(golden_json()));
  j["datasets"]["test"] = "missing.ndjson";
  write_file(tmp.path() / "cfg.json", j.dump());
  const auto r = invoke({"baseline", "--config", (tmp.path() / "cfg.json").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("configuration error") != std::string::npos);
}

TEST_CASE("help exits 0") { CHECK(invoke({"--help"}).code == 0); }

TEST_CASE("a run that dies midway exits 1 and keeps its artifacts") {
  testing::TempDir tmp;
  const auto full = read_file(testing::fixture_dir() / "golden" / "script.ndjson");
  const auto lines = text::split_lines(full);
  const std::string truncated = text::join_lines({lines.begin(), lines.begin() + 30}, true);
  const auto cfg = config_with_script(tmp.path(), truncated);
  const auto r = invoke({"run", "--config", cfg, "--runs-dir", (tmp.path() / "runs").string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("category: unsuccessful") != std::string::npos);
  CHECK(r.out.find("script exhausted") != std::string::npos);
  CHECK(std::filesystem::exists(tmp.path() / "runs" / "cfg" / "run.json"));
  CHECK(std::filesystem::exists(tmp.path() / "runs" / "cfg" / "memory.log"));
}

TEST_CASE("baseline scores CoT-SC on both splits and writes baseline.csv") {
  testing::TempDir tmp;
  const auto g = testing::GoldenScenario::load(testing::fixture_dir() / "golden");
  // paths: three right, two wrong for every task; decimals get two right and three wrong
  std::string script;
  int expected_val = 0, expected_test = 0;
  for (const auto* ds : {&g.validation, &g.test}) {
    for (const auto& t : ds->instances) {
      const bool dec = t.metadata.at("kind") == "dec";
      const std::string right = testing::solver_reply(t.target), wrong = testing::solver_reply("0");
      std::vector<std::string> texts = dec ? std::vector<std::string>{right, wrong, right, wrong, wrong}
                                           : std::vector<std::string>{wrong, right, right, wrong, right};
      script += Json{{"tag", "cot_sc/" + t.id}, {"texts", texts}}.dump() + "\n";
      (ds == &g.validation ? expected_val : expected_test) += dec ? 0 : 1;
    }
  }
  const auto cfg = config_with_script(tmp.path(), script);
  const auto r = invoke({"baseline", "--config", cfg, "--runs-dir", (tmp.path() / "runs").string()});
  REQUIRE(r.code == 0);
  const auto csv = read_file(tmp.path() / "runs" / "cfg" / "baseline.csv");
  const auto rows = text::split_lines(csv);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "split,paths,score,ci_lo,ci_hi");
  CHECK(rows[1].rfind("validation,5," + text::fixed(expected_val / 20.0) + ",", 0) == 0);
  CHECK(rows[2].rfind("test,5," + text::fixed(expected_test / 50.0) + ",", 0) == 0);

  // the baseline may share the run directory with a later run
  const auto run = invoke({"run", "--config", golden_json(), "--runs-dir", (tmp.path() / "runs").string(), "--run-id", "cfg"});
  CHECK(run.code == 0);
}

TEST_CASE("baseline with one path") {
  testing::TempDir tmp;
  const auto g = testing::GoldenScenario::load(testing::fixture_dir() / "golden");
  std::string script;
  for (const auto* ds : {&g.validation, &g.test}) {
    for (const auto& t : ds->instances) {
      script += Json{{"tag", "cot_sc/" + t.id}, {"texts", {testing::solver_reply(t.target)}}}.dump() + "\n";
    }
  }
  const auto cfg = config_with_script(tmp.path(), script);
  const auto r = invoke({"baseline", "--config", cfg, "--runs-dir", (tmp.path() / "runs").string(), "--paths", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("cot-sc validation: 1.0000") != std::string::npos);
}

TEST_CASE("evaluate one policy on one split") {
  testing::TempDir tmp;
  const auto g = testing::GoldenScenario::load(testing::fixture_dir() / "golden");
  testing::TagOracle oracle(g.responder());
  // freeze the oracle's replies for the test split only
  std::string script;
  for (const auto& t : g.test.instances) {
    const llm::ChatRequest req = llm::make_request("", "q", "solve/" + t.id + "/out");
    script += Json{{"tag", req.tag}, {"texts", oracle.complete(req).texts}}.dump() + "\n";
  }
  const auto cfg = config_with_script(tmp.path(), script);
  const auto r = invoke({"evaluate", "--config", cfg, "--split", "test"});
  CHECK(r.code == 0);
  CHECK(r.out.find("test: 0.4000") != std::string::npos);
  CHECK(r.out.find("(30 failures of 50)") != std::string::npos);
}
