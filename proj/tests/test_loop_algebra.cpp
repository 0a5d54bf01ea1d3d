#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heavenly/loop_algebra.hpp"
#include "heavenly/random.hpp"

#include <cmath>

using namespace heavenly;

namespace {

Vec sample(const Grid1D& g, double (*f)(double)) {
  Vec v(g.n);
  for (int j = 0; j < g.n; ++j) v[j] = f(g.x[j]);
  return v;
}

LaurentVectorField<1> vf1(int power, Vec f) {
  LaurentVectorField<1> a;
  a.c[power] = {std::move(f)};
  return a;
}

LaurentOneForm<1> of1(int power, Vec f) {
  LaurentOneForm<1> l;
  l.c[power] = {std::move(f)};
  return l;
}

LaurentVectorField<1> random_vf(const Grid1D& g, Rng& rng, std::initializer_list<int> powers) {
  LaurentVectorField<1> a;
  for (int p : powers) a.c[p] = {random_band_limited(g, rng, g.n / 8)};
  return a;
}

}  // namespace

TEST_CASE("commutator matches hand formula in 1d") {
  Grid1D g = make_grid(64);
  auto a = vf1(0, Vec(g.n, 1.0));
  auto b = vf1(0, sample(g, std::sin));
  auto c = commutator(g, a, b);
  Vec want = sample(g, std::cos);
  REQUIRE(c.c.count(0) == 1);
  for (int j = 0; j < g.n; ++j) CHECK(c.c[0][0][j] == doctest::Approx(want[j]).epsilon(1e-12));
}

TEST_CASE("commutator antisymmetry and bilinearity") {
  Grid1D g = make_grid(32);
  Rng rng(3);
  auto a = random_vf(g, rng, {-1, 0, 2});
  auto self = commutator(g, a, a);
  CHECK(norm_inf(self) <= 1e-12 * std::max(1.0, norm_inf(a)));

  auto b = random_vf(g, rng, {0, 1});
  auto ab = commutator(g, a, b);
  auto ba = commutator(g, b, a);
  axpy(ab, ba, 1.0);
  CHECK(norm_inf(ab) <= 1e-12 * std::max(1.0, norm_inf(commutator(g, a, b))));

  // [2a, b] = 2[a, b]
  auto a2 = a;
  scale(a2, 2.0);
  auto lhs = commutator(g, a2, b);
  auto rhs = commutator(g, a, b);
  scale(rhs, -2.0);
  axpy(lhs, rhs, 1.0);
  CHECK(norm_inf(lhs) <= 1e-11);
}

TEST_CASE("commutator jacobi defect small on random triples") {
  Grid1D g = make_grid(32);
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto a = random_vf(g, rng, {-1, 0});
    auto b = random_vf(g, rng, {0, 1});
    auto c = random_vf(g, rng, {-1, 1});
    auto j1 = commutator(g, a, commutator(g, b, c));
    auto j2 = commutator(g, b, commutator(g, c, a));
    auto j3 = commutator(g, c, commutator(g, a, b));
    axpy(j1, j2, 1.0);
    axpy(j1, j3, 1.0);
    double scale_ref =
        std::max(1.0, norm_inf(a) * norm_inf(b) * norm_inf(c));
    CHECK(norm_inf(j1) <= 1e-10 * scale_ref);
  }
}

TEST_CASE("2d commutator hand check") {
  Grid2D g = make_grid(32, 32);
  std::size_t sz = std::size_t(g.n1) * g.n2;
  LaurentVectorField<2> a, b;
  a.c[0] = {Vec(sz), Vec(sz, 0.0)};
  b.c[0] = {Vec(sz, 0.0), Vec(sz)};
  Vec want1(sz);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      double x1 = g.x1[i], x2 = g.x2[j];
      a.c[0][0][idx(g, i, j)] = std::sin(x1) * std::cos(x2);
      b.c[0][1][idx(g, i, j)] = std::cos(x2);
      want1[idx(g, i, j)] = std::sin(x1) * std::sin(x2) * std::cos(x2);
    }
  auto c = commutator(g, a, b);
  double defect = 0.0;
  for (std::size_t t = 0; t < sz; ++t) {
    defect = std::max(defect, std::fabs(c.c[0][0][t] - want1[t]));
    defect = std::max(defect, std::fabs(c.c[0][1][t]));
  }
  CHECK(defect <= 1e-12);
}

TEST_CASE("projections partition powers, lambda^0 is plus") {
  Grid1D g = make_grid(32);
  Rng rng(9);
  auto a = random_vf(g, rng, {-2, -1, 0, 1, 2});
  auto plusa = project(a, +1);
  auto minusa = project(a, -1);
  CHECK(plusa.c.count(0) == 1);
  CHECK(plusa.c.count(-1) == 0);
  CHECK(minusa.c.count(-1) == 1);
  CHECK(minusa.c.count(0) == 0);
  axpy(plusa, minusa, 1.0);
  axpy(plusa, a, -1.0);
  CHECK(norm_inf(plusa) == 0.0);

  auto lam_minus = vf1(-1, sample(g, std::sin));
  CHECK(norm_inf(project(lam_minus, +1)) == 0.0);
}

TEST_CASE("r_bracket special cases") {
  Grid1D g = make_grid(32);
  Rng rng(21);
  auto a = random_vf(g, rng, {0, 1});
  auto b = random_vf(g, rng, {0, 2});
  auto rb = r_bracket(g, a, b);
  auto cb = commutator(g, a, b);
  axpy(rb, cb, -1.0);
  CHECK(norm_inf(rb) <= 1e-12 * std::max(1.0, norm_inf(cb)));

  auto bm = random_vf(g, rng, {-1, -2});
  auto mixed = r_bracket(g, a, bm);
  CHECK(norm_inf(mixed) <= 1e-13);
}

TEST_CASE("r_bracket jacobi defect") {
  Grid1D g = make_grid(32);
  Rng rng(22);
  for (int trial = 0; trial < 5; ++trial) {
    auto a = random_vf(g, rng, {-1, 0});
    auto b = random_vf(g, rng, {-2, 1});
    auto c = random_vf(g, rng, {0, 1});
    auto j1 = r_bracket(g, a, r_bracket(g, b, c));
    auto j2 = r_bracket(g, b, r_bracket(g, c, a));
    auto j3 = r_bracket(g, c, r_bracket(g, a, b));
    axpy(j1, j2, 1.0);
    axpy(j1, j3, 1.0);
    double scale_ref = std::max(1.0, norm_inf(a) * norm_inf(b) * norm_inf(c));
    CHECK(norm_inf(j1) <= 1e-10 * scale_ref);
  }
}

TEST_CASE("residue pairing picks total power p-1") {
  Grid1D g = make_grid(32);
  auto l = of1(-1, Vec(g.n, 1.0));
  auto a = vf1(0, Vec(g.n, 1.0));
  CHECK(residue_pairing(g, l, a, 0) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));

  auto l0 = of1(0, Vec(g.n, 1.0));
  CHECK(residue_pairing(g, l0, a, 0) == 0.0);
}

TEST_CASE("residue pairing reproduces the coordinate functional") {
  Grid1D g = make_grid(64);
  Vec u = sample(g, std::sin);
  Vec u0 = derivative(g, u, 1);
  for (double& v : u0) v *= -2.0;

  LaurentOneForm<1> l;
  l.c[1] = {Vec(g.n, 1.0)};
  l.c[0] = {u0};

  double s = g.x[10];
  auto a = vf1(-1, delta_kernel(g, s));
  CHECK(residue_pairing(g, l, a, 0) == doctest::Approx(u0[10]).epsilon(1e-12));
}

TEST_CASE("coadjoint action explicit formula") {
  Grid1D g = make_grid(64);
  auto a = vf1(0, sample(g, std::sin));
  auto l = of1(0, sample(g, std::cos));
  auto r = coadjoint_action(g, a, l);
  // f g' + 2 f' g with f = sin, g = cos
  REQUIRE(r.c.count(0) == 1);
  for (int j = 0; j < g.n; ++j) {
    double x = g.x[j];
    double want = -std::sin(x) * std::sin(x) + 2.0 * std::cos(x) * std::cos(x);
    CHECK(r.c[0][0][j] == doctest::Approx(want).epsilon(1e-11));
  }
  CHECK(r.c[0][0][0] == doctest::Approx(2.0).epsilon(1e-12));

  auto ca = vf1(0, Vec(g.n, 0.7));
  auto cl = of1(0, Vec(g.n, -1.3));
  CHECK(norm_inf(coadjoint_action(g, ca, cl)) <= 1e-12);
}

TEST_CASE("coadjoint of the hierarchy pair gives the quadratic flow term") {
  Grid1D g = make_grid(64);
  Vec u = sample(g, std::sin);
  Vec ux = derivative(g, u, 1);
  Vec uxx = derivative(g, u, 2);

  LaurentVectorField<1> a;  // (lambda + u_x) d/dx
  a.c[1] = {Vec(g.n, 1.0)};
  a.c[0] = {ux};
  LaurentOneForm<1> l;  // (lambda - 2 u_x) dx
  l.c[1] = {Vec(g.n, 1.0)};
  l.c[0] = {ux};
  for (double& v : l.c[0][0]) v *= -2.0;

  auto r = coadjoint_action(g, a, l);
  REQUIRE(r.c.count(0) == 1);
  for (int j = 0; j < g.n; ++j)
    CHECK(r.c[0][0][j] == doctest::Approx(-6.0 * ux[j] * uxx[j]).epsilon(1e-10));
}

TEST_CASE("duality of coadjoint action against the pairing") {
  // (ad*_a l | b) = -(l | [a,b]); the explicit formula realizes the minus form
  for (int n : {32, 64}) {
    Grid1D g = make_grid(n);
    Rng rng(100 + n);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      auto a = random_vf(g, rng, {-1, 0, 1});
      auto b = random_vf(g, rng, {-2, 0, 1});
      LaurentOneForm<1> l;
      l.c[-1] = {random_band_limited(g, rng, g.n / 8)};
      l.c[0] = {random_band_limited(g, rng, g.n / 8)};
      l.c[1] = {random_band_limited(g, rng, g.n / 8)};
      for (int p : {-1, 0, 1}) {
        double lhs = residue_pairing(g, coadjoint_action(g, a, l), b, p);
        double rhs = -residue_pairing(g, l, commutator(g, a, b), p);
        double scale_ref = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
        worst = std::max(worst, std::fabs(lhs - rhs) / scale_ref);
      }
    }
    CHECK(worst <= 1e-9);
  }
}
