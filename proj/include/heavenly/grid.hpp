#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace heavenly {

using Vec = std::vector<double>;

struct NonZeroMean : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform grid on [0, 2pi). Spectral differentiation needs an even size.
struct Grid1D {
  int n = 0;
  double h = 0.0;
  Vec x;
};

struct Grid2D {
  int n1 = 0, n2 = 0;
  double h1 = 0.0, h2 = 0.0;
  Vec x1, x2;
};

Grid1D make_grid(int n);
Grid2D make_grid(int n1, int n2);

inline std::size_t idx(const Grid2D& g, int i1, int i2) {
  return std::size_t(i1) * g.n2 + i2;
}

inline int wrap(int j, int n) {
  j %= n;
  return j < 0 ? j + n : j;
}

double mean(const Vec& f);
double max_abs(const Vec& f);

double inner_product(const Grid1D& g, const Vec& f, const Vec& q);
double inner_product(const Grid2D& g, const Vec& f, const Vec& q);

// Trigonometric-interpolation derivative. order 1 zeroes the Nyquist mode so
// the operator stays exactly skew; order 2 keeps -(n/2)^2 there.
Vec derivative(const Grid1D& g, const Vec& f, int order = 1);

// Unique zero-mean antiderivative. Throws NonZeroMean unless |mean f| <= 1e-10 max|f|.
Vec antiderivative(const Grid1D& g, const Vec& f);

// Same spectral symbol, but the mean (and Nyquist) component is silently dropped.
// This is the matrix the suite assembles; the checked front door is antiderivative().
Vec antiderivative_projected(const Grid1D& g, const Vec& f);

namespace serial {
Vec axis_derivative(const Grid2D& g, const Vec& f, int axis, int order);
}
namespace par {
Vec axis_derivative(const Grid2D& g, const Vec& f, int axis, int order);
}
inline Vec axis_derivative(const Grid2D& g, const Vec& f, int axis, int order = 1) {
  return par::axis_derivative(g, f, axis, order);
}

int node_index(const Grid1D& g, double s);

// Nearest-node delta with its Nyquist component removed: unit mass exactly,
// sifting exact below the Nyquist mode, and derivative(green) = delta - 1/2pi exactly.
Vec delta_kernel(const Grid1D& g, double s);

// Periodic Green's function of d/dx, zero-mean convention.
Vec green_kernel(const Grid1D& g, double s);

}  // namespace heavenly
