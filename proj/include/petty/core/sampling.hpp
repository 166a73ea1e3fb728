#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "petty/core/vec.hpp"

namespace petty {

// Portable mappings from mt19937_64 output; the standard distributions are
// implementation-defined, and CSV output must be byte-stable across toolchains.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double normal01(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Uniform direction on S^{n-1}.
inline Vec random_direction(std::mt19937_64& rng, int n) {
  if (n == 2) {
    const double t = 2.0 * std::numbers::pi * uniform01(rng);
    return {std::cos(t), std::sin(t), 0.0};
  }
  for (;;) {
    const Vec v{normal01(rng), normal01(rng), normal01(rng)};
    const double len = norm(v);
    if (len > 1e-12) return v / len;
  }
}

}  // namespace petty
