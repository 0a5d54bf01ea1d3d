#include "heavenly/lie_poisson.hpp"

#include <cmath>
#include <stdexcept>

namespace heavenly {

namespace {

// f1 on the x1 axis times f2 on the x2 axis, flattened row-major
Vec outer(const Grid2D& g, const Vec& f1, const Vec& f2) {
  Vec v(std::size_t(g.n1) * g.n2);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) v[idx(g, i, j)] = f1[i] * f2[j];
  return v;
}

}  // namespace

MpSeed make_seed(const Grid1D& g, const Vec& u, int p) {
  MpSeed s;
  s.p = p;
  s.u = u;
  s.u0 = derivative(g, u);
  for (double& v : s.u0) v *= -2.0;
  s.form.c[p + 1] = {Vec(g.n, 1.0)};
  s.form.c[p] = {s.u0};
  return s;
}

PlebSeed make_seed(const Grid2D& g, const Vec& u, int p) {
  PlebSeed s;
  s.p = p;
  s.u = u;
  Vec d1 = axis_derivative(g, u, 0);
  Vec d2 = axis_derivative(g, u, 1);
  s.u0.resize(d1.size());
  for (std::size_t j = 0; j < d1.size(); ++j) s.u0[j] = d1[j] - d2[j];
  s.w1 = axis_derivative(g, s.u0, 0);
  s.w2 = axis_derivative(g, s.u0, 1);
  std::size_t m = s.u0.size();
  s.form.c[p + 1] = {Vec(m, 1.0), Vec(m, 1.0)};
  s.form.c[p] = {s.w1, s.w2};
  return s;
}

LaurentVectorField<1> coordinate_gradient(const Grid1D& g, int p, double s) {
  LaurentVectorField<1> a;
  a.c[-(p + 1)] = {delta_kernel(g, s)};
  return a;
}

LaurentVectorField<2> coordinate_gradient(const Grid2D& g, int p, double s1, double s2) {
  Grid1D g1 = make_grid(g.n1);
  Grid1D g2 = make_grid(g.n2);
  Vec green1 = green_kernel(g1, s1);
  Vec delta2 = delta_kernel(g2, s2);
  LaurentVectorField<2> a;
  std::size_t m = std::size_t(g.n1) * g.n2;
  if (p == 0) {
    // symmetric form -(1/2 lambda)(theta(x1-s1) delta ..., delta ... theta(x2-s2))
    Vec delta1 = delta_kernel(g1, s1);
    Vec green2 = green_kernel(g2, s2);
    Vec c1 = outer(g, green1, delta2);
    Vec c2 = outer(g, delta1, green2);
    for (double& v : c1) v *= -0.5;
    for (double& v : c2) v *= -0.5;
    a.c[-1] = {std::move(c1), std::move(c2)};
  } else {
    // one-sided form theta(s1-x1) delta(s2-x2) d/dx1, theta(s-x) -> -G(x-s)
    Vec c1 = outer(g, green1, delta2);
    for (double& v : c1) v = -v;
    a.c[-(p + 1)] = {std::move(c1), Vec(m, 0.0)};
  }
  return a;
}

double evaluate_coordinate(const Grid1D& g, const MpSeed& seed, double s) {
  return residue_pairing(g, seed.form, coordinate_gradient(g, seed.p, s), 0);
}

double evaluate_coordinate(const Grid2D& g, const PlebSeed& seed, double s1, double s2) {
  return residue_pairing(g, seed.form, coordinate_gradient(g, seed.p, s1, s2), 0);
}

double bracket_numeric(const Grid1D& g, const MpSeed& seed, double s1, double s2) {
  auto a = coordinate_gradient(g, seed.p, s1);
  auto b = coordinate_gradient(g, seed.p, s2);
  return residue_pairing(g, seed.form, r_bracket(g, a, b), 0);
}

double bracket_numeric(const Grid2D& g, const PlebSeed& seed, const std::array<double, 2>& t1,
                       const std::array<double, 2>& t2) {
  auto a = coordinate_gradient(g, seed.p, t1[0], t1[1]);
  auto b = coordinate_gradient(g, seed.p, t2[0], t2[1]);
  return residue_pairing(g, seed.form, r_bracket(g, a, b), 0);
}

double bracket_closed(const Grid1D& g, const MpSeed& seed, double s1, double s2) {
  if (seed.p != 0 && seed.p != -1) return 0.0;
  Vec dprof = derivative(g, delta_kernel(g, 0.0));
  int j1 = node_index(g, s1), j2 = node_index(g, s2);
  double dp = dprof[wrap(j1 - j2, g.n)];
  if (seed.p == 0) return -2.0 * dp;
  return dp * (seed.u0[j1] + seed.u0[j2]);
}

double bracket_closed(const Grid2D& g, const PlebSeed& seed, const std::array<double, 2>& t1,
                      const std::array<double, 2>& t2) {
  if (seed.p == 0)
    throw std::invalid_argument("plane p=0 kernel has no pointwise closed form");
  if (seed.p != -1) return 0.0;
  Grid1D g1 = make_grid(g.n1);
  Grid1D g2 = make_grid(g.n2);
  int j1 = node_index(g1, t1[0]), j2 = node_index(g2, t1[1]);
  int j3 = node_index(g1, t2[0]), j4 = node_index(g2, t2[1]);
  Vec gprof = green_kernel(g1, 0.0);
  Vec dprof = delta_kernel(g2, 0.0);
  double w_sum = seed.w1[idx(g, j1, j2)] + seed.w1[idx(g, j3, j4)];
  double main = w_sum * gprof[wrap(j3 - j1, g.n1)] * dprof[wrap(j4 - j2, g.n2)];
  // the periodic green function obeys G' = delta - 1/2pi, so the theta'
  // factors of the chain leave behind a zero-mode term; without it the
  // defect would stall at O(1) of scale instead of shrinking with h
  double corr = 0.0;
  for (int j = 0; j < g.n2; ++j)
    corr += dprof[wrap(j - j2, g.n2)] * dprof[wrap(j - j4, g.n2)] *
            (seed.u0[idx(g, j1, j)] - seed.u0[idx(g, j3, j)]);
  corr *= g.h2 / (2.0 * M_PI);
  return main + corr;
}

DenseMatrix kernel_table_numeric(const Grid1D& g, const MpSeed& seed, bool parallel) {
  auto entry = [&](int i, int j) { return bracket_numeric(g, seed, g.x[i], g.x[j]); };
  return parallel ? par::table(g.n, g.n, entry) : serial::table(g.n, g.n, entry);
}

DenseMatrix integrate_kernel_table(const Grid1D& g, const DenseMatrix& k) {
  if (k.rows != g.n || k.cols != g.n) throw std::invalid_argument("table does not match grid");
  DenseMatrix amat =
      serial::assemble(g.n, [&](const Vec& f) { return antiderivative_projected(g, f); });
  DenseMatrix left = serial::matmul(amat, k);
  DenseMatrix full = serial::matmul(left, serial::transpose(amat));
  return scaled(full, 0.25);
}

}  // namespace heavenly
