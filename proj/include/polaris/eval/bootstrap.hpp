#pragma once

#include <cstdint>
#include <vector>

namespace polaris::eval {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Percentile bootstrap over per-instance outcomes: B resamples with
/// replacement, bounds are the (1-level)/2 and 1-(1-level)/2 empirical
/// quantiles (inverse-CDF, no interpolation) of the resample means.
/// Throws ParameterError for empty outcomes, level outside (0,1) or B < 1000.
Interval bootstrap_ci(const std::vector<double>& outcomes, double level, int B, std::uint64_t seed);

/// Inverse-CDF quantile of an ascending sample: the smallest value whose
/// empirical CDF reaches q.
double empirical_quantile(const std::vector<double>& sorted, double q);

}  // namespace polaris::eval
