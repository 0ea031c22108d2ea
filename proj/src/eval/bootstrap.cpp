#include "polaris/eval/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "polaris/core/error.hpp"
#include "polaris/core/rng.hpp"

namespace polaris::eval {

double empirical_quantile(const std::vector<double>& sorted, double q) {
  const double n = static_cast<double>(sorted.size());
  // 1e-9 guards against q*n landing a hair above an integer
  auto k = static_cast<long>(std::ceil(q * n - 1e-9)) - 1;
  k = std::clamp<long>(k, 0, static_cast<long>(sorted.size()) - 1);
  return sorted[static_cast<std::size_t>(k)];
}

Interval bootstrap_ci(const std::vector<double>& outcomes, double level, int B, std::uint64_t seed) {
  if (outcomes.empty()) throw ParameterError("bootstrap_ci: outcomes are empty");
  if (!(level > 0.0 && level < 1.0)) throw ParameterError("bootstrap_ci: level must lie in (0, 1)");
  if (B < 1000) throw ParameterError("bootstrap_ci: B must be at least 1000");

  std::mt19937_64 rng(seed);
  const std::size_t n = outcomes.size();
  std::vector<double> means(static_cast<std::size_t>(B));
  for (auto& m : means) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += outcomes[uniform_index(rng, n)];
    m = s / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  const double alpha = (1.0 - level) / 2.0;
  return {empirical_quantile(means, alpha), empirical_quantile(means, 1.0 - alpha)};
}

}  // namespace polaris::eval
