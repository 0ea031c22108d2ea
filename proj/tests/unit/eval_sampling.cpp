#include <doctest.h>

#include <set>

#include "polaris/core/error.hpp"
#include "polaris/eval/sampling.hpp"

using namespace polaris;
using namespace polaris::eval;

namespace {
std::vector<FailureRecord> failures(int n) {
  std::vector<FailureRecord> out;
  for (int i = n; i >= 1; --i) {
    FailureRecord f;
    f.task.id = "t" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    out.push_back(f);
  }
  return out;
}
std::vector<std::string> ids(const std::vector<FailureRecord>& v) {
  std::vector<std::string> out;
  for (const auto& f : v) out.push_back(f.task.id);
  return out;
}
}  // namespace

TEST_CASE("at most N failures are all kept, in id order") {
  CHECK(ids(sample_failures(failures(3), 3, 1)) == std::vector<std::string>{"t01", "t02", "t03"});
  CHECK(sample_failures({}, 3, 1).empty());
}

TEST_CASE("N of many, without replacement, sorted, reproducible") {
  const auto a = ids(sample_failures(failures(20), 5, 42));
  CHECK(a.size() == 5);
  CHECK(std::set<std::string>(a.begin(), a.end()).size() == 5);
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(a == ids(sample_failures(failures(20), 5, 42)));
  // the input order does not matter
  auto shuffled = failures(20);
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(a == ids(sample_failures(shuffled, 5, 42)));
}

TEST_CASE("every failure is reachable") {
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    for (const auto& id : ids(sample_failures(failures(10), 2, seed))) seen.insert(id);
  }
  CHECK(seen.size() == 10);
}

TEST_CASE("N below one is rejected") { CHECK_THROWS_AS(sample_failures(failures(3), 0, 1), ParameterError); }
