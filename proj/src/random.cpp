#include "heavenly/random.hpp"

#include <cmath>
#include <stdexcept>

namespace heavenly {

Vec random_band_limited(const Grid1D& g, Rng& rng, int kmax) {
  if (kmax < 1 || kmax > g.n / 2 - 1) throw std::invalid_argument("random_band_limited: bad kmax");
  Vec f(g.n, 0.0);
  for (int k = 1; k <= kmax; ++k) {
    double a = rng.uniform(), b = rng.uniform();
    for (int j = 0; j < g.n; ++j) f[j] += a * std::cos(k * g.x[j]) + b * std::sin(k * g.x[j]);
  }
  return f;
}

Vec random_band_limited(const Grid2D& g, Rng& rng, int kmax) {
  if (kmax < 1 || kmax > std::min(g.n1, g.n2) / 2 - 1)
    throw std::invalid_argument("random_band_limited: bad kmax");
  Vec f(std::size_t(g.n1) * g.n2, 0.0);
  for (int k1 = 0; k1 <= kmax; ++k1)
    for (int k2 = 0; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      double a = rng.uniform();
      double p1 = M_PI * rng.uniform();
      double p2 = M_PI * rng.uniform();
      for (int i = 0; i < g.n1; ++i) {
        double c1 = std::cos(k1 * g.x1[i] + p1);
        for (int j = 0; j < g.n2; ++j) f[idx(g, i, j)] += a * c1 * std::cos(k2 * g.x2[j] + p2);
      }
    }
  return f;
}

}  // namespace heavenly
