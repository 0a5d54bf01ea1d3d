#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "heavenly/dense.hpp"
#include "heavenly/grid.hpp"

namespace heavenly {

struct NonPositiveSlope : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operators act on covectors over the slope field v = u_x; u itself may be a
// non-periodic lift x + periodic, so the slope is the grid-friendly handle.
struct PoissonOperator {
  std::string name;
  DenseMatrix m;
  bool needs_mean_free = false;
  Vec slope;
};

PoissonOperator theta0(const Grid1D& g);       // (1/2) d^-1
PoissonOperator theta0_inv(const Grid1D& g);   // 2 d
PoissonOperator theta_minus1(const Grid1D& g, const Vec& slope);
// (1/2) d (1/sqrt v) d^-1 (1/sqrt v) d; throws NonPositiveSlope unless v > 0
PoissonOperator theta_minus1_inv(const Grid1D& g, const Vec& slope);

// matvec with the mean-free precondition enforced for d^-1-built operators
Vec apply(const Grid1D& g, const PoissonOperator& op, const Vec& x);

// max over seeded covector pairs of |<a,Tb> + <Ta,b>| / scale
double skew_defect(const Grid1D& g, const PoissonOperator& op, std::uint64_t seed,
                   int pairs = 100);

using OperatorBuilder = std::function<DenseMatrix(const Vec& slope)>;

// slope-space direction of the hamiltonian flow of a covector. This is not
// just d/dx of the operator output: the d^-1 factors drop an x-linear lift
// of u whose slope is a constant, and that constant must ride along or the
// bracket fails jacobi at O(1).
using TangentMap = std::function<Vec(const Vec& covector)>;

// tangent of w0 * theta0 + w1 * theta_minus1(slope); grid and slope are
// captured, both must outlive the returned map
TangentMap pencil_tangent(const Grid1D& g, const Vec& slope, double w0, double w1);

struct JacobiDefect {
  double defect = 0.0;
  double richardson_gap = 0.0;
};

// cyclic <a, T'[tangent(b)] c> sums with central differences in the slope;
// the reported defect uses the halved step, the gap compares the two steps
JacobiDefect jacobi_defect(const Grid1D& g, const OperatorBuilder& build,
                           const TangentMap& tangent, const Vec& slope, std::uint64_t seed,
                           int triples = 50);

// jacobi defect of theta0 + eps * theta_minus1(slope)
JacobiDefect pencil_jacobi_defect(const Grid1D& g, double eps, const Vec& slope,
                                  std::uint64_t seed, int triples = 50);

// theta0^-1 theta_minus1 grad; grad must be mean-free
Vec recursion_apply(const Grid1D& g, const Vec& grad, const Vec& slope);

// theta0 (-6 v v_x) against sign*(3/2)v^2 + const and
// theta_minus1 (-6 v v_x) against sign*(5/2)v^3 + affine in v
struct FlowConsistency {
  double defect_y = 0.0;
  int sign_y = 0;
  double defect_t = 0.0;
  int sign_t = 0;
};
FlowConsistency flow_consistency(const Grid1D& g, const Vec& slope);

// theta_minus1 . theta_minus1_inv fitted as scalar * projection over inputs
// band-limited to n/4 (products with 1/sqrt(v) spill past the resolved band
// on full-spectrum probes); remainder spectrum summarized by a leak count
// and tail size
struct InverseComposition {
  double scalar = 0.0;
  int leak_rank = 0;
  double tail = 0.0;
};
InverseComposition theta_inverse_composition(const Grid1D& g, const Vec& slope);

}  // namespace heavenly
