#include "polaris/eval/sampling.hpp"

#include <algorithm>
#include <random>

#include "polaris/core/error.hpp"
#include "polaris/core/rng.hpp"

namespace polaris::eval {

std::vector<FailureRecord> sample_failures(std::vector<FailureRecord> failures, int N, std::uint64_t seed) {
  if (N < 1) throw ParameterError("sample_failures: N must be >= 1");
  auto by_id = [](const FailureRecord& a, const FailureRecord& b) { return a.task.id < b.task.id; };
  std::stable_sort(failures.begin(), failures.end(), by_id);
  const auto n = static_cast<std::size_t>(N);
  if (failures.size() <= n) return failures;

  // partial Fisher-Yates over indices
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(failures.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + uniform_index(rng, idx.size() - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  std::vector<FailureRecord> out;
  for (std::size_t i : idx) out.push_back(failures[i]);
  return out;
}

}  // namespace polaris::eval
