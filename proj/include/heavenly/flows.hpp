#pragma once

#include <functional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "heavenly/grid.hpp"

namespace heavenly {

enum class FlowCase { MP_y, MP_t, Plebanski_t, Plebanski_y };

struct BlowupDetected : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FlowSpec {
  FlowCase flow = FlowCase::MP_y;
  double dt = 1e-3;
  double T = 0.1;
  bool dealias = false;  // 2/3-rule filter on the rhs
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;    // v = u_x per stored step
  std::vector<double> monitors;  // H0 per stored step
};

// autonomous rhs for v = u_x; only the two reduced flows close this way
Vec hierarchy_rhs(const Grid1D& g, FlowCase flow, const Vec& v, bool dealias = false);

// dt times the max characteristic speed; advisory, the integrator is explicit
double cfl_advisory(FlowCase flow, const Vec& v, double dt);

// classical fixed-step rk4; throws BlowupDetected when max|v_x| passes
// a thousand times its initial size
Trajectory evolve(const Grid1D& g, const FlowSpec& spec, const Vec& v0);

// Newton solve of v = v0(x - 3 v y); refuses y at or past the
// characteristic-crossing bound
double characteristics_solution(const std::function<double(double)>& v0, double y, double x);

double conserved_H0(const Grid1D& g, const Vec& v);

struct PlebanskiResidual {
  Vec rt;  // (u_x2 - u_x1)_t - (u11 u22 - u12^2)
  Vec ry;  // (u_x1 - u_x2)_y - (u11 u22 - u12^2)
};

// residuals of the heavenly flow pair on supplied jets; nothing is integrated
PlebanskiResidual plebanski_flow_residual(const Grid2D& g, const Vec& u, const Vec& ut,
                                          const Vec& uy);

// columns: time,H0,min_v,max_v
void write_trajectory_csv(std::ostream& out, const Trajectory& tr);

}  // namespace heavenly
