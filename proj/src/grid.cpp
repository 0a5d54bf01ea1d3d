#include "heavenly/grid.hpp"

#include "heavenly/fourier.hpp"

#include <cmath>
#include <complex>

namespace heavenly {

Grid1D make_grid(int n) {
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("grid size must be even and >= 8, got " + std::to_string(n));
  Grid1D g;
  g.n = n;
  g.h = 2.0 * M_PI / n;
  g.x.resize(n);
  for (int j = 0; j < n; ++j) g.x[j] = j * g.h;
  return g;
}

Grid2D make_grid(int n1, int n2) {
  Grid1D a = make_grid(n1), b = make_grid(n2);
  Grid2D g;
  g.n1 = n1;
  g.n2 = n2;
  g.h1 = a.h;
  g.h2 = b.h;
  g.x1 = a.x;
  g.x2 = b.x;
  return g;
}

double mean(const Vec& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s / double(f.size());
}

double max_abs(const Vec& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::fabs(v));
  return m;
}

double inner_product(const Grid1D& g, const Vec& f, const Vec& q) {
  if ((int)f.size() != g.n || (int)q.size() != g.n)
    throw std::invalid_argument("inner_product: grid mismatch");
  double s = 0.0;
  for (int j = 0; j < g.n; ++j) s += f[j] * q[j];
  return s * g.h;
}

double inner_product(const Grid2D& g, const Vec& f, const Vec& q) {
  std::size_t sz = std::size_t(g.n1) * g.n2;
  if (f.size() != sz || q.size() != sz)
    throw std::invalid_argument("inner_product: grid mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < sz; ++j) s += f[j] * q[j];
  return s * g.h1 * g.h2;
}

namespace {

// symbol(k) multiplies mode k, k = 0..n/2
Vec apply_symbol(int n, const Vec& f, const std::vector<std::complex<double>>& sym) {
  std::vector<std::complex<double>> z(n / 2 + 1);
  fft::forward(f.data(), z.data(), n);
  for (int k = 0; k <= n / 2; ++k) z[k] *= sym[k];
  Vec out(n);
  fft::backward(z.data(), out.data(), n);
  return out;
}

std::vector<std::complex<double>> derivative_symbol(int n, int order) {
  std::vector<std::complex<double>> sym(n / 2 + 1);
  if (order == 1) {
    sym[0] = 0.0;
    for (int k = 1; k < n / 2; ++k) sym[k] = std::complex<double>(0.0, k);
    sym[n / 2] = 0.0;  // keep the operator skew
  } else {
    for (int k = 0; k <= n / 2; ++k) sym[k] = -double(k) * double(k);
  }
  return sym;
}

std::vector<std::complex<double>> antiderivative_symbol(int n) {
  std::vector<std::complex<double>> sym(n / 2 + 1);
  sym[0] = 0.0;
  for (int k = 1; k < n / 2; ++k) sym[k] = 1.0 / std::complex<double>(0.0, k);
  sym[n / 2] = 0.0;
  return sym;
}

}  // namespace

Vec derivative(const Grid1D& g, const Vec& f, int order) {
  if ((int)f.size() != g.n) throw std::invalid_argument("derivative: size mismatch");
  if (order != 1 && order != 2) throw std::invalid_argument("derivative: order must be 1 or 2");
  for (double v : f)
    if (!std::isfinite(v)) throw std::invalid_argument("derivative: non-finite input");
  return apply_symbol(g.n, f, derivative_symbol(g.n, order));
}

Vec antiderivative(const Grid1D& g, const Vec& f) {
  if ((int)f.size() != g.n) throw std::invalid_argument("antiderivative: size mismatch");
  double m = std::fabs(mean(f));
  double scale = max_abs(f);
  if (m > 1e-10 * std::max(scale, 1e-300))
    throw NonZeroMean("antiderivative needs a mean-free input, |mean| = " + std::to_string(m));
  return antiderivative_projected(g, f);
}

Vec antiderivative_projected(const Grid1D& g, const Vec& f) {
  return apply_symbol(g.n, f, antiderivative_symbol(g.n));
}

namespace {

Vec rows_apply(const Grid2D& g, const Vec& f, int order, bool along_x2, bool parallel) {
  // along_x2: transform contiguous rows of length n2; otherwise the caller
  // passes transposed data with rows of length n1.
  int nrow = along_x2 ? g.n1 : g.n2;
  int len = along_x2 ? g.n2 : g.n1;
  Vec out(f.size());
  auto sym = derivative_symbol(len, order);
#pragma omp parallel for schedule(static) if (parallel)
  for (int r = 0; r < nrow; ++r) {
    std::vector<std::complex<double>> z(len / 2 + 1);
    fft::forward(f.data() + std::size_t(r) * len, z.data(), len);
    for (int k = 0; k <= len / 2; ++k) z[k] *= sym[k];
    fft::backward(z.data(), out.data() + std::size_t(r) * len, len);
  }
  return out;
}

Vec transpose_grid(const Vec& f, int n1, int n2, bool parallel) {
  Vec out(f.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) out[std::size_t(j) * n1 + i] = f[std::size_t(i) * n2 + j];
  return out;
}

Vec axis_derivative_impl(const Grid2D& g, const Vec& f, int axis, int order, bool parallel) {
  if (f.size() != std::size_t(g.n1) * g.n2)
    throw std::invalid_argument("axis_derivative: size mismatch");
  if (axis == 1) return rows_apply(g, f, order, true, parallel);
  if (axis != 0) throw std::invalid_argument("axis_derivative: bad axis");
  Vec t = transpose_grid(f, g.n1, g.n2, parallel);
  t = rows_apply(g, t, order, false, parallel);
  return transpose_grid(t, g.n2, g.n1, parallel);
}

}  // namespace

namespace serial {
Vec axis_derivative(const Grid2D& g, const Vec& f, int axis, int order) {
  return axis_derivative_impl(g, f, axis, order, false);
}
}  // namespace serial

namespace par {
Vec axis_derivative(const Grid2D& g, const Vec& f, int axis, int order) {
  return axis_derivative_impl(g, f, axis, order, true);
}
}  // namespace par

int node_index(const Grid1D& g, double s) {
  return wrap((int)std::lround(s / g.h), g.n);
}

Vec delta_kernel(const Grid1D& g, double s) {
  if (s < 0.0 || s >= 2.0 * M_PI) throw std::invalid_argument("delta_kernel: s outside [0, 2pi)");
  int j0 = node_index(g, s);
  Vec d(g.n);
  const double c = 1.0 / (2.0 * M_PI);
  for (int j = 0; j < g.n; ++j) d[j] = ((j - j0) % 2 == 0 ? -c : c);
  d[j0] += 1.0 / g.h;
  return d;
}

Vec green_kernel(const Grid1D& g, double s) {
  return antiderivative_projected(g, delta_kernel(g, s));
}

}  // namespace heavenly
