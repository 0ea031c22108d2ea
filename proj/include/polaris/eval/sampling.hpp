#pragma once

#include <cstdint>
#include <vector>

#include "polaris/core/types.hpp"

namespace polaris::eval {

/// All failures when there are at most N; otherwise N drawn uniformly without
/// replacement (seeded) from the id-sorted list, returned in id order.
/// Throws ParameterError when N < 1.
std::vector<FailureRecord> sample_failures(std::vector<FailureRecord> failures, int N, std::uint64_t seed);

}  // namespace polaris::eval
