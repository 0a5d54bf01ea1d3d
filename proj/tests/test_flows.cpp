#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "heavenly/flows.hpp"
#include "heavenly/grid.hpp"
#include "heavenly/random.hpp"

using namespace heavenly;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("right hand sides follow the cubic hierarchy") {
  Grid1D g = make_grid(64);

  SUBCASE("constant states do not move") {
    Vec v(g.n, 0.7);
    CHECK(max_abs(hierarchy_rhs(g, FlowCase::MP_y, v)) <= 1e-13);
    CHECK(max_abs(hierarchy_rhs(g, FlowCase::MP_t, v)) <= 1e-13);
  }

  SUBCASE("cosine point values") {
    Vec v(g.n);
    for (int j = 0; j < g.n; ++j) v[j] = std::cos(g.x[j]);
    Vec ry = hierarchy_rhs(g, FlowCase::MP_y, v);
    Vec rt = hierarchy_rhs(g, FlowCase::MP_t, v);
    int j0 = node_index(g, 0.0);
    int j4 = node_index(g, kPi / 4.0);
    CHECK(std::abs(ry[j0]) <= 1e-12);
    CHECK(ry[j4] == doctest::Approx(1.5).epsilon(1e-12));
    // -(15/2) v^2 v_x at pi/4
    CHECK(rt[j4] == doctest::Approx(15.0 * std::sqrt(2.0) / 8.0).epsilon(1e-12));
  }

  SUBCASE("dealiasing is a no-op inside the resolved band") {
    Rng rng(41);
    Vec v = random_band_limited(g, rng, g.n / 8);
    Vec plain = hierarchy_rhs(g, FlowCase::MP_y, v);
    Vec cut = hierarchy_rhs(g, FlowCase::MP_y, v, true);
    double gap = 0.0;
    for (int j = 0; j < g.n; ++j) gap = std::max(gap, std::abs(plain[j] - cut[j]));
    CHECK(gap <= 1e-13 * std::max(1.0, max_abs(plain)));
  }

  SUBCASE("two dimensional cases are not closed flows") {
    Vec v(g.n, 0.0);
    CHECK_THROWS_AS(hierarchy_rhs(g, FlowCase::Plebanski_t, v), std::invalid_argument);
  }
}

TEST_CASE("H0 quadrature") {
  Grid1D g = make_grid(64);
  Vec c(g.n), w(g.n), z(g.n, 0.0);
  for (int j = 0; j < g.n; ++j) {
    c[j] = std::cos(g.x[j]);
    w[j] = 1.0 + 0.5 * std::sin(g.x[j]);
  }
  CHECK(std::abs(conserved_H0(g, c)) <= 1e-12);
  CHECK(conserved_H0(g, w) == doctest::Approx(11.0 * kPi / 4.0).epsilon(1e-13));
  CHECK(conserved_H0(g, z) == 0.0);
}

TEST_CASE("evolution conserves the hierarchy invariants") {
  Grid1D g = make_grid(256);
  Vec v0(g.n);
  for (int j = 0; j < g.n; ++j) v0[j] = 0.1 * std::sin(g.x[j]);

  auto drift = [&g](const Trajectory& tr, auto quantity) {
    double q0 = quantity(tr.states.front());
    double worst = 0.0;
    for (const Vec& v : tr.states) worst = std::max(worst, std::abs(quantity(v) - q0));
    return worst / std::max(1.0, std::abs(q0));
  };

  FlowSpec spec;
  spec.dt = 1e-3;
  spec.T = 0.1;

  SUBCASE("y flow") {
    spec.flow = FlowCase::MP_y;
    Trajectory tr = evolve(g, spec, v0);
    CHECK(tr.times.size() == tr.states.size());
    CHECK(tr.monitors.size() == tr.states.size());
    CHECK(tr.times.front() == 0.0);
    CHECK(tr.times.back() == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(drift(tr, [&g](const Vec& v) { return conserved_H0(g, v); }) <= 1e-8);
    CHECK(drift(tr, [&g](const Vec& v) { return mean(v) * 2.0 * kPi; }) <= 1e-8);
    CHECK(drift(tr, [&g](const Vec& v) { return inner_product(g, v, v); }) <= 1e-8);
  }

  SUBCASE("t flow") {
    spec.flow = FlowCase::MP_t;
    Trajectory tr = evolve(g, spec, v0);
    CHECK(drift(tr, [&g](const Vec& v) { return conserved_H0(g, v); }) <= 1e-8);
  }

  SUBCASE("constant state is a fixed point") {
    Grid1D gs = make_grid(32);
    Vec c(gs.n, 0.3);
    FlowSpec s2;
    s2.flow = FlowCase::MP_t;
    s2.dt = 0.01;
    s2.T = 0.05;
    Trajectory tr = evolve(gs, s2, c);
    double gap = 0.0;
    for (int j = 0; j < gs.n; ++j) gap = std::max(gap, std::abs(tr.states.back()[j] - 0.3));
    CHECK(gap <= 1e-13);
  }
}

TEST_CASE("evolution tracks the characteristic solution") {
  Grid1D g = make_grid(256);
  Vec v0(g.n);
  for (int j = 0; j < g.n; ++j) v0[j] = 0.1 * std::sin(g.x[j]);
  FlowSpec spec;
  spec.flow = FlowCase::MP_y;
  spec.dt = 1e-3;
  spec.T = 0.1;
  Trajectory tr = evolve(g, spec, v0);

  auto fun = [](double x) { return 0.1 * std::sin(x); };
  double worst = 0.0;
  for (int j = 0; j < g.n; ++j)
    worst = std::max(worst, std::abs(tr.states.back()[j] - characteristics_solution(fun, 0.1, g.x[j])));
  CHECK(worst <= 1e-7);
}

TEST_CASE("integrator is fourth order in dt") {
  Grid1D g = make_grid(256);
  Vec v0(g.n);
  for (int j = 0; j < g.n; ++j) v0[j] = 0.5 * std::sin(g.x[j]);
  auto fun = [](double x) { return 0.5 * std::sin(x); };

  auto terminal_error = [&](double dt) {
    FlowSpec spec;
    spec.flow = FlowCase::MP_y;
    spec.dt = dt;
    spec.T = 0.3;
    Trajectory tr = evolve(g, spec, v0);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j)
      worst = std::max(worst, std::abs(tr.states.back()[j] - characteristics_solution(fun, 0.3, g.x[j])));
    return worst;
  };

  double coarse = terminal_error(0.015);
  double fine = terminal_error(0.0075);
  CHECK(coarse / fine >= 12.0);
  CHECK(coarse / fine <= 20.0);
}

TEST_CASE("gradient blow up is detected") {
  Grid1D g = make_grid(128);
  Vec v0(g.n);
  for (int j = 0; j < g.n; ++j) v0[j] = 0.5 * std::sin(g.x[j]);
  FlowSpec spec;
  spec.flow = FlowCase::MP_y;
  spec.dt = 2e-3;
  spec.T = 2.0;
  CHECK_THROWS_AS(evolve(g, spec, v0), BlowupDetected);
}

TEST_CASE("characteristics solver") {
  auto fun = [](double x) { return std::sin(x); };

  SUBCASE("zero time returns the profile") {
    CHECK(characteristics_solution(fun, 0.0, 1.3) == doctest::Approx(std::sin(1.3)).epsilon(1e-13));
  }

  SUBCASE("constant profiles ride along") {
    auto c = [](double) { return 0.4; };
    CHECK(characteristics_solution(c, 0.7, 2.0) == doctest::Approx(0.4).epsilon(1e-13));
  }

  SUBCASE("solution satisfies the implicit relation") {
    double y = 0.3, x = 1.0;
    double v = characteristics_solution(fun, y, x);
    CHECK(std::abs(v - std::sin(x - 3.0 * v * y)) <= 1e-11);
  }

  SUBCASE("queries past the caustic are refused") {
    CHECK_THROWS_AS(characteristics_solution(fun, 0.4, 3.2), NoConvergence);
  }
}

TEST_CASE("plebanski residual pair") {
  Grid2D g = make_grid(32, 32);
  const std::size_t total = std::size_t(g.n1) * g.n2;

  SUBCASE("zero jets vanish") {
    Vec z(total, 0.0);
    PlebanskiResidual r = plebanski_flow_residual(g, z, z, z);
    CHECK(max_abs(r.rt) == 0.0);
    CHECK(max_abs(r.ry) == 0.0);
  }

  SUBCASE("manufactured separable jet") {
    double t0 = 0.7;
    Vec u(total), ut(total), uy(total);
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j) {
        double x1 = g.x1[i], x2 = g.x2[j];
        u[idx(g, i, j)] = std::cos(t0) * std::sin(x1) * std::sin(x2);
        ut[idx(g, i, j)] = -std::sin(t0) * std::sin(x1) * std::sin(x2);
        uy[idx(g, i, j)] = 0.2 * std::sin(x1 + x2);
      }
    PlebanskiResidual r = plebanski_flow_residual(g, u, ut, uy);
    double worst_t = 0.0, worst_y = 0.0;
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j) {
        double x1 = g.x1[i], x2 = g.x2[j];
        double c = std::cos(t0);
        double w = c * c * (std::sin(x1) * std::sin(x1) * std::sin(x2) * std::sin(x2) -
                            std::cos(x1) * std::cos(x1) * std::cos(x2) * std::cos(x2));
        double lt = -std::sin(t0) * (std::sin(x1) * std::cos(x2) - std::cos(x1) * std::sin(x2));
        double expect_t = lt - w;
        // uy depends on x1 + x2 only, so its two slopes cancel
        double expect_y = -w;
        worst_t = std::max(worst_t, std::abs(r.rt[idx(g, i, j)] - expect_t));
        worst_y = std::max(worst_y, std::abs(r.ry[idx(g, i, j)] - expect_y));
      }
    CHECK(worst_t <= 1e-12);
    CHECK(worst_y <= 1e-12);
  }

  SUBCASE("residuals ignore constant shifts") {
    Rng rng(55);
    Vec u = random_band_limited(g, rng, 4);
    Vec ut = random_band_limited(g, rng, 4);
    Vec uy = random_band_limited(g, rng, 4);
    PlebanskiResidual a = plebanski_flow_residual(g, u, ut, uy);
    Vec shifted = u;
    for (double& c : shifted) c += 5.0;
    PlebanskiResidual b = plebanski_flow_residual(g, shifted, ut, uy);
    double gap = 0.0;
    for (std::size_t k = 0; k < total; ++k) {
      gap = std::max(gap, std::abs(a.rt[k] - b.rt[k]));
      gap = std::max(gap, std::abs(a.ry[k] - b.ry[k]));
    }
    CHECK(gap <= 1e-12 * std::max(1.0, max_abs(a.rt)));
  }

  SUBCASE("size mismatch is rejected") {
    Vec u(total, 0.0), bad(total / 2, 0.0);
    CHECK_THROWS_AS(plebanski_flow_residual(g, u, bad, u), std::invalid_argument);
  }
}

TEST_CASE("trajectory csv export") {
  Grid1D g = make_grid(32);
  Vec v0(g.n);
  for (int j = 0; j < g.n; ++j) v0[j] = 0.1 * std::sin(g.x[j]);
  FlowSpec spec;
  spec.flow = FlowCase::MP_y;
  spec.dt = 0.01;
  spec.T = 0.03;
  Trajectory tr = evolve(g, spec, v0);

  std::ostringstream out;
  write_trajectory_csv(out, tr);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "time,H0,min_v,max_v");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == (int)tr.times.size());

  // advisory number stays well under the explicit-step bound here
  CHECK(cfl_advisory(FlowCase::MP_y, v0, spec.dt) <= 0.5);
  CHECK(cfl_advisory(FlowCase::MP_y, v0, spec.dt) == doctest::Approx(0.01 * 0.3).epsilon(1e-12));
}
