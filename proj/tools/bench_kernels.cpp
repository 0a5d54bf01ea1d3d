// Serial reference vs OpenMP kernels. The twins promise bitwise equality,
// so the gap column should print as exact zeros while the speedup moves.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "heavenly/dense.hpp"
#include "heavenly/grid.hpp"
#include "heavenly/lie_poisson.hpp"
#include "heavenly/random.hpp"

using namespace heavenly;

namespace {

double time_ms(const std::function<void()>& body, int reps = 3) {
  double best = 1e30;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, int size, double serial_ms, double par_ms, double gap) {
  std::printf("%-22s %6d %10.2f %10.2f %8.2fx %10.1e\n", name, size, serial_ms, par_ms,
              serial_ms / par_ms, gap);
}

DenseMatrix random_matrix(int n, std::uint64_t seed) {
  Rng rng(seed);
  DenseMatrix m(n, n);
  for (double& q : m.a) q = rng.uniform();
  return m;
}

double matrix_gap(const DenseMatrix& a, const DenseMatrix& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.a.size(); ++k) d = std::max(d, std::abs(a.a[k] - b.a[k]));
  return d;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-22s %6s %10s %10s %9s %10s\n", "kernel", "size", "serial", "openmp", "speedup",
              "max gap");

  for (int n : {256, 512}) {
    DenseMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
    DenseMatrix ms, mp;
    double ts = time_ms([&] { ms = serial::matmul(a, b); });
    double tp = time_ms([&] { mp = par::matmul(a, b); });
    row("matmul", n, ts, tp, matrix_gap(ms, mp));
  }

  for (int n : {256, 512}) {
    Grid1D g = make_grid(n);
    auto op = [&g](const Vec& x) { return derivative(g, x); };
    DenseMatrix ms, mp;
    double ts = time_ms([&] { ms = serial::assemble(g.n, op); });
    double tp = time_ms([&] { mp = par::assemble(g.n, op); });
    row("assemble d/dx", n, ts, tp, matrix_gap(ms, mp));
  }

  {
    int n = 512;
    Grid2D g = make_grid(n, n);
    Rng rng(3);
    Vec f = random_band_limited(g, rng, 16);
    Vec ds, dp;
    double ts = time_ms([&] {
      ds = serial::axis_derivative(g, f, 0, 1);
      ds = serial::axis_derivative(g, ds, 1, 2);
    });
    double tp = time_ms([&] {
      dp = par::axis_derivative(g, f, 0, 1);
      dp = par::axis_derivative(g, dp, 1, 2);
    });
    double gap = 0.0;
    for (std::size_t k = 0; k < ds.size(); ++k) gap = std::max(gap, std::abs(ds[k] - dp[k]));
    row("axis derivative", n, ts, tp, gap);
  }

  {
    int n = 2048;
    auto f = [](int i, int j) { return std::sin(0.01 * i) * std::cos(0.02 * j); };
    DenseMatrix ms, mp;
    double ts = time_ms([&] { ms = serial::table(n, n, f); });
    double tp = time_ms([&] { mp = par::table(n, n, f); });
    row("table fill", n, ts, tp, matrix_gap(ms, mp));
  }

  {
    int n = 96;
    Grid1D g = make_grid(n);
    Vec u(g.n);
    for (int j = 0; j < g.n; ++j) u[j] = std::sin(g.x[j]);
    auto seed = make_seed(g, u, -1);
    DenseMatrix ks, kp;
    double ts = time_ms([&] { ks = kernel_table_numeric(g, seed, false); }, 2);
    double tp = time_ms([&] { kp = kernel_table_numeric(g, seed, true); }, 2);
    row("bracket table", n, ts, tp, matrix_gap(ks, kp));
  }

  return 0;
}
