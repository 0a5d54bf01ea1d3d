#pragma once

#include <cstdint>
#include <functional>

#include "heavenly/grid.hpp"

namespace heavenly {

// local density f(u, u_x, u_xx) together with its slot partials
struct LocalDensity {
  std::function<double(double, double, double)> f;
  std::function<double(double, double, double)> fu;
  std::function<double(double, double, double)> fux;
  std::function<double(double, double, double)> fuxx;
};

// max relative gap between the declared partials and central differences of f
// at seeded sample points; a cheap self check before a density is trusted
double density_slot_defect(const LocalDensity& d, std::uint64_t seed, int samples = 100);

struct Functional {
  LocalDensity density;
  double value(const Grid1D& g, const Vec& u) const;
};

// euler-lagrange form f_u - D(f_ux) + D^2(f_uxx), slots filled with spectral
// derivatives of u
Vec variational_derivative(const Grid1D& g, const LocalDensity& d, const Vec& u);

// node-by-node central differences of the quadrature functional; slow but
// independent of the euler-lagrange algebra
Vec gateaux_gradient(const Grid1D& g, const Functional& F, const Vec& u);

using GradField = std::function<Vec(const Vec& u)>;

// five point gauss-legendre quadrature of int_0^1 <grad(mu u), u> dmu; exact
// when the gradient is polynomial in u of degree nine or less. Values come
// out relative to u = 0.
double homotopy_reconstruct(const Grid1D& g, const GradField& grad, const Vec& u);

// u-space covector of the cubic t-flow, solved from theta_minus1 x = rhs by
// a rank revealing least squares; the operator's zero modes are excluded, so
// the result carries no casimir content
Vec t_flow_gradient(const Grid1D& g, const Vec& slope);

struct TFlowReconstruction {
  double value = 0.0;
  // residual of the polynomial closure of the antidifferentiated covector
  double closure_defect = 0.0;
};

// reconstructs the t-flow hamiltonian: antidifferentiate the solved covector,
// close the missing mean (a casimir of the slope pencil, invisible to the
// flow) with the fit b z + c z^2, then run the homotopy on the closure
TFlowReconstruction t_flow_hamiltonian(const Grid1D& g, const Vec& slope);

}  // namespace heavenly
