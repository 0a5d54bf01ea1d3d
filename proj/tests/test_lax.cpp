#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "heavenly/grid.hpp"
#include "heavenly/lax.hpp"
#include "heavenly/random.hpp"

using namespace heavenly;

namespace {

JetMP zero_jet(const Grid1D& g) {
  JetMP j;
  Vec z(g.n, 0.0);
  j.u = j.ux = j.uy = j.ut = j.uxx = j.uxy = j.uxt = j.uyy = z;
  return j;
}

// superposition of a few travelling waves, every slot analytic
JetMP random_trig_jet(const Grid1D& g, std::uint64_t seed, double y0, double t0) {
  Rng rng(seed);
  JetMP jet = zero_jet(g);
  for (int m = 0; m < 3; ++m) {
    int k = rng.uniform_int(1, 4);
    double amp = 0.1 + 0.2 * rng.uniform01();
    double b = rng.uniform();
    double c = rng.uniform();
    double phi = 3.14159 * rng.uniform();
    for (int j = 0; j < g.n; ++j) {
      double th = k * g.x[j] + b * y0 + c * t0 + phi;
      double s = std::sin(th), co = std::cos(th);
      jet.u[j] += amp * s;
      jet.ux[j] += amp * k * co;
      jet.uy[j] += amp * b * co;
      jet.ut[j] += amp * c * co;
      jet.uxx[j] -= amp * k * k * s;
      jet.uxy[j] -= amp * k * b * s;
      jet.uxt[j] -= amp * k * c * s;
      jet.uyy[j] -= amp * b * b * s;
    }
  }
  return jet;
}

JetMP travelling_sin_jet(const Grid1D& g, double y0, double t0) {
  JetMP jet = zero_jet(g);
  for (int j = 0; j < g.n; ++j) {
    double th = g.x[j] + y0 + t0;
    jet.u[j] = std::sin(th);
    jet.ux[j] = jet.uy[j] = jet.ut[j] = std::cos(th);
    jet.uxx[j] = jet.uxy[j] = jet.uxt[j] = jet.uyy[j] = -std::sin(th);
  }
  return jet;
}

JetPlebanski manufactured_pleb_jet(const Grid2D& g, double y0, double t0) {
  const std::size_t total = std::size_t(g.n1) * g.n2;
  JetPlebanski jet;
  jet.u.resize(total);
  jet.ut.resize(total);
  jet.uy.resize(total);
  jet.u11.resize(total);
  jet.u12.resize(total);
  jet.u22.resize(total);
  double cph = std::cos(y0 + t0), sph = std::sin(y0 + t0);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      std::size_t k = idx(g, i, j);
      double s1 = std::sin(g.x1[i]), s2 = std::sin(g.x2[j]);
      double c1 = std::cos(g.x1[i]), c2 = std::cos(g.x2[j]);
      jet.u[k] = s1 * s2 * cph;
      jet.ut[k] = -s1 * s2 * sph;
      jet.uy[k] = -s1 * s2 * sph;
      jet.u11[k] = -s1 * s2 * cph;
      jet.u22[k] = -s1 * s2 * cph;
      jet.u12[k] = c1 * c2 * cph;
    }
  return jet;
}

double scale_of(const JetMP& jet) {
  double s = 1.0;
  for (const Vec* f : {&jet.ux, &jet.uy, &jet.uxx, &jet.uxy, &jet.uxt, &jet.uyy})
    s = std::max(s, max_abs(*f));
  return s;
}

}  // namespace

TEST_CASE("pairs assemble from complete jets") {
  Grid1D g = make_grid(32);

  SUBCASE("flat mp pair") {
    JetMP jet = zero_jet(g);
    LaxPairMP pair = build_pair(g, jet);
    REQUIRE(pair.A.c.count(2));
    REQUIRE(pair.B.c.count(1));
    for (int j = 0; j < g.n; ++j) {
      CHECK(pair.A.c.at(2)[0][j] == 1.0);
      CHECK(pair.A.c.at(1)[0][j] == 0.0);
      CHECK(pair.A.c.at(0)[0][j] == 0.0);
      CHECK(pair.B.c.at(1)[0][j] == 1.0);
      CHECK(pair.B.c.at(0)[0][j] == 0.0);
    }
  }

  SUBCASE("populated mp pair") {
    JetMP jet = travelling_sin_jet(g, 0.4, 0.2);
    LaxPairMP pair = build_pair(g, jet);
    for (int j = 0; j < g.n; ++j) {
      CHECK(pair.A.c.at(1)[0][j] == jet.ux[j]);
      CHECK(pair.A.c.at(0)[0][j] == -jet.uy[j]);
      CHECK(pair.B.c.at(0)[0][j] == jet.ux[j]);
    }
  }

  SUBCASE("flat plebanski pair") {
    Grid2D g2 = make_grid(16, 16);
    const std::size_t total = std::size_t(g2.n1) * g2.n2;
    JetPlebanski jet;
    jet.u = jet.ut = jet.uy = jet.u11 = jet.u12 = jet.u22 = Vec(total, 0.0);
    LaxPairPlebanski pair = build_pair(g2, jet);
    for (std::size_t k = 0; k < total; ++k) {
      CHECK(pair.A.c.at(1)[0][k] == 0.0);
      CHECK(pair.A.c.at(1)[1][k] == 1.0);
      CHECK(pair.B.c.at(1)[0][k] == -1.0);
      CHECK(pair.B.c.at(1)[1][k] == 0.0);
    }
  }

  SUBCASE("missing slot is rejected") {
    JetMP jet = zero_jet(g);
    jet.uy.clear();
    CHECK_THROWS_AS(build_pair(g, jet), std::invalid_argument);
  }

  SUBCASE("inconsistent slope is rejected") {
    JetMP jet = travelling_sin_jet(g, 0.0, 0.0);
    for (double& c : jet.ux) c *= 2.0;
    CHECK_THROWS_AS(build_pair(g, jet), JetInconsistent);
  }
}

TEST_CASE("compatibility cancels the top powers") {
  Grid1D g = make_grid(64);
  JetMP jet = travelling_sin_jet(g, 0.4, 0.2);
  LaxPairMP pair = build_pair(g, jet);
  ResidualMP r = compatibility_residual(g, pair, jet);

  double scale = scale_of(jet);
  if (r.count(3)) CHECK(max_abs(r.at(3)) <= 1e-15);
  CHECK(max_abs(r.at(2)) <= 1e-15);
  CHECK(max_abs(r.at(1)) <= 1e-12 * scale);

  double worst = 0.0;
  for (int j = 0; j < g.n; ++j)
    worst = std::max(worst, std::abs(r.at(0)[j] + 2.0 * std::sin(g.x[j] + 0.6)));
  CHECK(worst <= 1e-10);
}

TEST_CASE("pde residual examples") {
  SUBCASE("travelling sine") {
    Grid1D g = make_grid(64);
    JetMP jet = travelling_sin_jet(g, 0.1, 0.3);
    Vec r = pde_residual(g, jet);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j)
      worst = std::max(worst, std::abs(r[j] + 2.0 * std::sin(g.x[j] + 0.4)));
    CHECK(worst <= 1e-12);
  }

  SUBCASE("zero jet") {
    Grid1D g = make_grid(32);
    Vec r = pde_residual(g, zero_jet(g));
    CHECK(max_abs(r) == 0.0);
  }

  SUBCASE("plebanski without x1 dependence") {
    Grid2D g = make_grid(16, 16);
    const std::size_t total = std::size_t(g.n1) * g.n2;
    JetPlebanski jet;
    jet.u = jet.ut = jet.u11 = jet.u12 = jet.u22 = Vec(total, 0.0);
    jet.uy.resize(total);
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j) jet.uy[idx(g, i, j)] = std::sin(g.x2[j]);
    Vec r = pde_residual(g, jet);
    double worst = 0.0;
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j)
        worst = std::max(worst, std::abs(r[idx(g, i, j)] - std::cos(g.x2[j])));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("off shell equivalence of compatibility and pde residuals") {
  SUBCASE("seeded mp jets") {
    Grid1D g = make_grid(64);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      JetMP jet = random_trig_jet(g, seed, 0.7, -0.3);
      EquivalenceDefect d = equivalence_check(g, jet);
      CHECK(d.zero_gap <= 1e-10 * d.scale);
      CHECK(d.tail <= 1e-12 * d.scale);
    }
  }

  SUBCASE("zero jet passes trivially") {
    Grid1D g = make_grid(32);
    EquivalenceDefect d = equivalence_check(g, zero_jet(g));
    CHECK(d.zero_gap == 0.0);
    CHECK(d.tail == 0.0);
  }

  SUBCASE("manufactured plebanski jet") {
    Grid2D g = make_grid(32, 32);
    JetPlebanski jet = manufactured_pleb_jet(g, 0.5, 0.2);
    EquivalenceDefect d = equivalence_check(g, jet);
    CHECK(d.zero_gap <= 1e-10 * d.scale);
    CHECK(d.tail <= 1e-12 * d.scale);
  }
}

TEST_CASE("pde residual is linear in the second derivative slots") {
  Grid1D g = make_grid(64);
  Rng rng(77);
  JetMP base = random_trig_jet(g, 31, 0.2, 0.1);
  Vec f1 = random_band_limited(g, rng, 5);
  Vec f2 = random_band_limited(g, rng, 5);
  Vec g1 = random_band_limited(g, rng, 5);
  Vec g2 = random_band_limited(g, rng, 5);

  auto with_slots = [&](const Vec& uxt, const Vec& uyy) {
    JetMP j = base;
    j.uxt = uxt;
    j.uyy = uyy;
    return pde_residual(g, j);
  };

  Vec zero(g.n, 0.0);
  Vec fsum(g.n), gsum(g.n);
  for (int j = 0; j < g.n; ++j) {
    fsum[j] = f1[j] + f2[j];
    gsum[j] = g1[j] + g2[j];
  }
  Vec ra = with_slots(f1, g1);
  Vec rb = with_slots(f2, g2);
  Vec rs = with_slots(fsum, gsum);
  Vec r0 = with_slots(zero, zero);

  double worst = 0.0, scale = 1.0;
  for (int j = 0; j < g.n; ++j) {
    worst = std::max(worst, std::abs(rs[j] + r0[j] - ra[j] - rb[j]));
    scale = std::max(scale, std::abs(rs[j]));
  }
  CHECK(worst <= 1e-13 * scale);
}

TEST_CASE("casimir defect orders") {
  Grid1D g = make_grid(64);

  SUBCASE("leading orders cancel for arbitrary jets") {
    JetMP jet = random_trig_jet(g, 9, 0.4, 0.6);
    auto defect = casimir_defect(g, jet);
    double scale = scale_of(jet);
    CHECK(max_abs(defect.at(1)) <= 1e-12 * scale);
    CHECK(max_abs(defect.at(0)) <= 1e-12 * scale);

    // next order carries the hamiltonian content
    Vec expect(g.n);
    for (int j = 0; j < g.n; ++j)
      expect[j] = -(2.0 * jet.uxy[j] + 6.0 * jet.ux[j] * jet.uxx[j]);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j) worst = std::max(worst, std::abs(defect.at(-1)[j] - expect[j]));
    CHECK(worst <= 1e-11 * scale);

    Vec tail(g.n);
    for (int j = 0; j < g.n; ++j)
      tail[j] = 2.0 * jet.uy[j] * jet.uxx[j] + 4.0 * jet.ux[j] * jet.uxy[j];
    worst = 0.0;
    for (int j = 0; j < g.n; ++j) worst = std::max(worst, std::abs(defect.at(-2)[j] - tail[j]));
    CHECK(worst <= 1e-11 * scale);
  }

  SUBCASE("on shell jets kill the minus one order") {
    Rng rng(15);
    Vec u = random_band_limited(g, rng, 4);
    for (double& c : u) c *= 0.3;
    JetMP jet = zero_jet(g);
    jet.u = u;
    jet.ux = derivative(g, u);
    jet.uxx = derivative(g, u, 2);
    for (int j = 0; j < g.n; ++j) {
      jet.uy[j] = -1.5 * jet.ux[j] * jet.ux[j];
      jet.uxy[j] = -3.0 * jet.ux[j] * jet.uxx[j];
    }
    auto defect = casimir_defect(g, jet);
    CHECK(max_abs(defect.at(-1)) <= 1e-10 * scale_of(jet));
  }

  SUBCASE("zero jet is silent") {
    auto defect = casimir_defect(g, zero_jet(g));
    for (const auto& [p, f] : defect) CHECK(max_abs(f) <= 1e-16);
  }

  SUBCASE("plebanski orders") {
    Grid2D g2 = make_grid(32, 32);
    Rng rng(23);
    JetPlebanski jet;
    jet.u = random_band_limited(g2, rng, 3);
    for (double& c : jet.u) c *= 0.2;
    jet.ut = random_band_limited(g2, rng, 3);
    jet.uy = random_band_limited(g2, rng, 3);
    jet.u11 = axis_derivative(g2, jet.u, 0, 2);
    jet.u22 = axis_derivative(g2, jet.u, 1, 2);
    jet.u12 = axis_derivative(g2, axis_derivative(g2, jet.u, 0, 1), 1, 1);

    auto defect = casimir_defect(g2, jet);
    double scale = std::max(1.0, std::max(max_abs(jet.u11), max_abs(jet.u22)));
    CHECK(std::max(max_abs(defect.at(1)[0]), max_abs(defect.at(1)[1])) <= 1e-14);
    CHECK(std::max(max_abs(defect.at(0)[0]), max_abs(defect.at(0)[1])) <= 1e-12 * scale);

    // minus one order reproduces the gradient of the nonlinearity
    Vec w(jet.u.size());
    for (std::size_t k = 0; k < w.size(); ++k)
      w[k] = jet.u11[k] * jet.u22[k] - jet.u12[k] * jet.u12[k];
    Vec w1 = axis_derivative(g2, w, 0, 1);
    Vec w2 = axis_derivative(g2, w, 1, 1);
    double worst = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      worst = std::max(worst, std::abs(defect.at(-1)[0][k] - w1[k]));
      worst = std::max(worst, std::abs(defect.at(-1)[1][k] - w2[k]));
    }
    CHECK(worst <= 1e-11 * std::max(1.0, max_abs(w)));
  }
}
