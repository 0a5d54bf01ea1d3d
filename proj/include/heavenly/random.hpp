#pragma once

#include "heavenly/grid.hpp"

#include <cstdint>
#include <random>

namespace heavenly {

// Deterministic across platforms: raw mt19937_64 words scaled by hand,
// no library distributions (their streams are implementation defined).
struct Rng {
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double uniform01() { return double(eng() >> 11) * 0x1.0p-53; }
  double uniform() { return 2.0 * uniform01() - 1.0; }  // [-1, 1)
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + int(eng() % std::uint64_t(hi - lo + 1));
  }

  std::mt19937_64 eng;
};

// Trigonometric polynomial with modes 1..kmax; kmax <= n/4 keeps all later
// products below the Nyquist mode, where d/dx is structurally singular.
Vec random_band_limited(const Grid1D& g, Rng& rng, int kmax);
Vec random_band_limited(const Grid2D& g, Rng& rng, int kmax);

}  // namespace heavenly
