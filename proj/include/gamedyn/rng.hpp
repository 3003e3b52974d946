#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gamedyn/la.hpp"

namespace gamedyn::rng {

using Engine = std::mt19937_64;

/// Uniform double in [0, 1). Implemented directly on the engine output so
/// sampled values are identical across standard-library implementations.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

/// Standard normal via Box-Muller (no cached spare, for reproducibility).
inline double gaussian(Engine& eng) {
  double u1 = uniform01(eng);
  while (u1 <= 0.0) u1 = uniform01(eng);
  const double u2 = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

inline Vec gaussian_vec(Engine& eng, int n) {
  Vec v(static_cast<std::size_t>(n));
  for (auto& x : v) x = gaussian(eng);
  return v;
}

/// Uniform sample from the ball of given radius around `center`.
inline Vec ball_point(Engine& eng, const Vec& center, double radius) {
  const int d = static_cast<int>(center.size());
  Vec dir = gaussian_vec(eng, d);
  double n = 0.0;
  for (double x : dir) n += x * x;
  n = std::sqrt(n);
  const double r = radius * std::pow(uniform01(eng), 1.0 / d);
  Vec p(center);
  if (n > 0.0) {
    for (int i = 0; i < d; ++i) p[i] += r * dir[i] / n;
  }
  return p;
}

}  // namespace gamedyn::rng
