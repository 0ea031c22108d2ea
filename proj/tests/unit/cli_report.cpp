#include <doctest.h>

#include "oracle.hpp"
#include "polaris/agent/engine.hpp"
#include "polaris/cli/report.hpp"
#include "polaris/core/artifacts.hpp"
#include "polaris/core/clock.hpp"
#include "polaris/core/error.hpp"
#include "polaris/core/text.hpp"

using namespace polaris;
using namespace polaris::cli;

namespace {

/// Runs the golden scenario (optionally with a different responder) into `runs`.
std::filesystem::path golden_run(const std::filesystem::path& runs, testing::TagOracle::Responder r = {},
                                 int budget = 2) {
  const auto g = testing::GoldenScenario::load(testing::fixture_dir() / "golden");
  testing::TagOracle oracle(r ? r : g.responder());
  LogicalClock clock;
  RunConfig cfg = g.config(runs);
  cfg.budget = {budget, std::nullopt};
  agent::Engine engine(cfg, {g.validation, g.test, g.base_policy}, oracle, clock);
  engine.run();
  return runs / "golden";
}

}  // namespace

TEST_CASE("golden report: curve, running max, one diff per integrated version") {
  testing::TempDir tmp;
  const auto run = golden_run(tmp.path());
  const auto b = build_report(run);
  CHECK(b.warnings.empty());
  REQUIRE(b.curve.size() == 3);
  double best = 0;
  for (std::size_t i = 0; i < b.curve.size(); ++i) {
    best = i == 0 ? b.curve[i].candidate : std::max(best, b.curve[i].candidate);
    CHECK(b.curve[i].champion == best);
    CHECK(b.curve[i].iteration == static_cast<int>(i));
    CHECK(b.curve[i].ci_lo);
  }
  REQUIRE(b.diffs.size() == 2);
  CHECK(b.diffs[0].from == 0);
  CHECK(b.diffs[1].to == 2);
  CHECK(b.diffs[0].added == 1);
  CHECK(b.diffs[0].deleted == 1);
  CHECK(b.summary.find("category: successful") != std::string::npos);

  write_report(run, b);
  CHECK(read_file(run / "report" / "curve.csv").rfind("iteration,candidate,champion,ci_lo,ci_hi\n0,0.400000,0.400000,", 0) == 0);
  CHECK(read_file(run / "report" / "diffs" / "v1_v2.diff") == read_file(run / "diffs" / "v1_v2.diff"));
  CHECK(std::filesystem::exists(run / "report" / "summary.txt"));
}

TEST_CASE("a worse candidate leaves the champion column flat") {
  testing::TempDir tmp;
  const auto run = golden_run(tmp.path());
  // splice a regression row into the curve
  std::string scores = read_file(run / "scores.csv");
  const auto pos = scores.find("0,test");
  scores.insert(pos, "3,validation,0.500000,0.300000,0.700000,10\n");
  write_file(run / "scores.csv", scores);
  const auto b = build_report(run);
  REQUIRE(b.curve.size() == 4);
  CHECK(b.curve[3].candidate == 0.5);
  CHECK(b.curve[3].champion == 0.95);
}

TEST_CASE("no integrations, no diffs") {
  testing::TempDir tmp;
  const auto run = golden_run(tmp.path(), {}, 0);
  const auto b = build_report(run);
  CHECK(b.diffs.empty());
  CHECK(b.curve.size() == 1);
  CHECK(b.warnings.empty());
}

TEST_CASE("a partial run reports its completed rows with warnings") {
  testing::TempDir tmp;
  const auto run = golden_run(tmp.path());
  std::filesystem::remove(run / "run.json");
  std::string scores = read_file(run / "scores.csv");
  // cut inside the iteration-2 row
  scores = scores.substr(0, scores.find("2,validation") + 9);
  write_file(run / "scores.csv", scores);
  write_file(run / "memory.log", read_file(run / "memory.log") + "{broken\n");
  const auto b = build_report(run);
  CHECK(b.curve.size() == 2);
  CHECK(b.warnings.size() == 3);
  CHECK(b.summary.find("category: incomplete") != std::string::npos);
  CHECK(b.diffs.size() == 2);
}

TEST_CASE("a missing policy file is a warning, not a failure") {
  testing::TempDir tmp;
  const auto run = golden_run(tmp.path());
  std::filesystem::remove(run / "policies" / "v1.policy");
  const auto b = build_report(run);
  // v0->v1 still renders from the ledger's copy of the source; v1->v2 cannot
  CHECK(b.diffs.size() == 1);
  CHECK(b.warnings.size() == 1);
}

TEST_CASE("report needs nothing but the run directory") {
  testing::TempDir tmp;
  CHECK_THROWS_AS(build_report(tmp.path() / "nope"), IoError);
  const auto b = build_report(tmp.path());
  CHECK(b.curve.empty());
  CHECK_FALSE(b.warnings.empty());
}
