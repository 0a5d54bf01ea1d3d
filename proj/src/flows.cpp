#include "heavenly/flows.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>

#include "heavenly/fourier.hpp"

namespace heavenly {

namespace {

Vec dealias_23(const Grid1D& g, Vec f) {
  std::vector<std::complex<double>> c(g.n / 2 + 1);
  fft::forward(f.data(), c.data(), g.n);
  for (int k = g.n / 3 + 1; k <= g.n / 2; ++k) c[k] = 0.0;
  fft::backward(c.data(), f.data(), g.n);
  return f;
}

double max_speed(FlowCase flow, const Vec& v) {
  double m = max_abs(v);
  return flow == FlowCase::MP_y ? 3.0 * m : 7.5 * m * m;
}

}  // namespace

Vec hierarchy_rhs(const Grid1D& g, FlowCase flow, const Vec& v, bool dealias) {
  if (flow != FlowCase::MP_y && flow != FlowCase::MP_t)
    throw std::invalid_argument("hierarchy_rhs: flow does not close in one field");
  Vec vx = derivative(g, v);
  Vec out(g.n);
  if (flow == FlowCase::MP_y) {
    for (int j = 0; j < g.n; ++j) out[j] = -3.0 * v[j] * vx[j];
  } else {
    for (int j = 0; j < g.n; ++j) out[j] = -7.5 * v[j] * v[j] * vx[j];
  }
  return dealias ? dealias_23(g, out) : out;
}

double cfl_advisory(FlowCase flow, const Vec& v, double dt) {
  return dt * max_speed(flow, v);
}

Trajectory evolve(const Grid1D& g, const FlowSpec& spec, const Vec& v0) {
  if ((int)v0.size() != g.n) throw std::invalid_argument("evolve: state size mismatch");
  long steps = std::max(1L, std::lround(spec.T / spec.dt));
  double dt = spec.T / double(steps);

  double slope0 = std::max(max_abs(derivative(g, v0)), 1e-12);

  Trajectory tr;
  tr.times.reserve(steps + 1);
  tr.states.reserve(steps + 1);
  tr.monitors.reserve(steps + 1);
  Vec v = v0;
  tr.times.push_back(0.0);
  tr.states.push_back(v);
  tr.monitors.push_back(conserved_H0(g, v));

  Vec k1, k2, k3, k4, tmp(g.n);
  for (long s = 0; s < steps; ++s) {
    k1 = hierarchy_rhs(g, spec.flow, v, spec.dealias);
    for (int j = 0; j < g.n; ++j) tmp[j] = v[j] + 0.5 * dt * k1[j];
    k2 = hierarchy_rhs(g, spec.flow, tmp, spec.dealias);
    for (int j = 0; j < g.n; ++j) tmp[j] = v[j] + 0.5 * dt * k2[j];
    k3 = hierarchy_rhs(g, spec.flow, tmp, spec.dealias);
    for (int j = 0; j < g.n; ++j) tmp[j] = v[j] + dt * k3[j];
    k4 = hierarchy_rhs(g, spec.flow, tmp, spec.dealias);
    for (int j = 0; j < g.n; ++j)
      v[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);

    double slope = max_abs(derivative(g, v));
    if (!std::isfinite(slope) || slope > 1e3 * slope0)
      throw BlowupDetected("evolve: gradient grew a thousandfold");

    tr.times.push_back(dt * double(s + 1));
    tr.states.push_back(v);
    tr.monitors.push_back(conserved_H0(g, v));
  }
  return tr;
}

double characteristics_solution(const std::function<double(double)>& v0, double y, double x) {
  const double fd = 1e-6;
  auto d0 = [&](double s) { return (v0(s + fd) - v0(s - fd)) / (2.0 * fd); };

  if (y != 0.0) {
    // crossing bound from the worst profile slope, sampled on a fine mesh
    const int m = 4096;
    double worst = 0.0;
    for (int j = 0; j < m; ++j) {
      double s = 2.0 * M_PI * j / m;
      double sl = d0(s);
      if (y > 0.0) worst = std::max(worst, -sl);
      else worst = std::max(worst, sl);
    }
    if (worst > 0.0 && std::abs(y) * 3.0 * worst >= 1.0)
      throw NoConvergence("characteristics_solution: past the crossing bound");
  }

  double v = v0(x);
  for (int it = 0; it < 100; ++it) {
    double xi = x - 3.0 * v * y;
    double f = v - v0(xi);
    double fp = 1.0 + 3.0 * y * d0(xi);
    double step = f / fp;
    v -= step;
    if (std::abs(step) <= 1e-12 && std::abs(f) <= 1e-11) return v;
  }
  throw NoConvergence("characteristics_solution: Newton stalled");
}

double conserved_H0(const Grid1D& g, const Vec& v) {
  double acc = 0.0;
  for (int j = 0; j < g.n; ++j) acc += v[j] * v[j] * v[j];
  return acc * g.h;
}

PlebanskiResidual plebanski_flow_residual(const Grid2D& g, const Vec& u, const Vec& ut,
                                          const Vec& uy) {
  const std::size_t total = std::size_t(g.n1) * g.n2;
  if (u.size() != total || ut.size() != total || uy.size() != total)
    throw std::invalid_argument("plebanski_flow_residual: size mismatch");

  Vec u11 = axis_derivative(g, u, 0, 2);
  Vec u22 = axis_derivative(g, u, 1, 2);
  Vec u12 = axis_derivative(g, axis_derivative(g, u, 0, 1), 1, 1);
  Vec ut1 = axis_derivative(g, ut, 0, 1);
  Vec ut2 = axis_derivative(g, ut, 1, 1);
  Vec uy1 = axis_derivative(g, uy, 0, 1);
  Vec uy2 = axis_derivative(g, uy, 1, 1);

  PlebanskiResidual r;
  r.rt.resize(total);
  r.ry.resize(total);
  for (std::size_t k = 0; k < total; ++k) {
    double w = u11[k] * u22[k] - u12[k] * u12[k];
    r.rt[k] = (ut2[k] - ut1[k]) - w;
    r.ry[k] = (uy1[k] - uy2[k]) - w;
  }
  return r;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
  out << "time,H0,min_v,max_v\n";
  char line[160];
  for (std::size_t s = 0; s < tr.times.size(); ++s) {
    const Vec& v = tr.states[s];
    double lo = v[0], hi = v[0];
    for (double c : v) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", tr.times[s], tr.monitors[s],
                  lo, hi);
    out << line;
  }
}

}  // namespace heavenly
