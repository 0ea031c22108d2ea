#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "polaris/core/text.hpp"

namespace polaris {

/// Unbiased index in [0, n) from a 64-bit Mersenne Twister. Unlike
/// std::uniform_int_distribution the result is identical across standard
/// library implementations, which keeps scripted runs byte-stable.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// Derives an independent stream seed from a base seed and a label.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  return seed ^ (text::fnv1a64(label) * 0x9E3779B97F4A7C15ULL);
}

}  // namespace polaris
