#pragma once

#include <array>
#include <map>
#include <stdexcept>

#include "heavenly/grid.hpp"
#include "heavenly/loop_algebra.hpp"

namespace heavenly {

struct JetInconsistent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 1d jet of u(x; y, t); the y/t slots are analytic data, the x slots must
// match spectral differentiation of their parents
struct JetMP {
  Vec u, ux, uy, ut, uxx, uxy, uxt, uyy;
};

// 2d jet; second derivatives ride along so off-shell jets stay expressible
struct JetPlebanski {
  Vec u, ut, uy, u11, u12, u22;
};

// worst relative gap between supplied x-derivative slots and spectral ones
double jet_defect(const Grid1D& g, const JetMP& jet);
double jet_defect(const Grid2D& g, const JetPlebanski& jet);

struct LaxPairMP {
  LaurentVectorField<1> A;  // (lambda^2 + lambda u_x - u_y) d/dx
  LaurentVectorField<1> B;  // (lambda + u_x) d/dx
};

struct LaxPairPlebanski {
  LaurentVectorField<2> A;  // (u_22, lambda - u_12)
  LaurentVectorField<2> B;  // (-lambda - u_12, u_11)
};

LaxPairMP build_pair(const Grid1D& g, const JetMP& jet);
LaxPairPlebanski build_pair(const Grid2D& g, const JetPlebanski& jet);

using ResidualMP = std::map<int, Vec>;
using ResidualPlebanski = std::map<int, std::array<Vec, 2>>;

// coefficients of [d_t + A, d_y + B] per lambda power; the top powers cancel
// algebraically and the constant power carries the heavenly equation
ResidualMP compatibility_residual(const Grid1D& g, const LaxPairMP& pair, const JetMP& jet);
ResidualPlebanski compatibility_residual(const Grid2D& g, const LaxPairPlebanski& pair,
                                         const JetPlebanski& jet);

// lhs - rhs of the governing equation on the supplied jet
Vec pde_residual(const Grid1D& g, const JetMP& jet);
Vec pde_residual(const Grid2D& g, const JetPlebanski& jet);

struct EquivalenceDefect {
  double zero_gap = 0.0;  // constant power against the pde residual
  double tail = 0.0;      // all other powers, which should cancel outright
  double scale = 1.0;
};

// off-shell identity between the two residual notions. In the 2d case the
// constant power is the rotated gradient (-d2 R, +d1 R) of the scalar
// residual, so the comparison happens through that map.
EquivalenceDefect equivalence_check(const Grid1D& g, const JetMP& jet);
EquivalenceDefect equivalence_check(const Grid2D& g, const JetPlebanski& jet);

// per-order coefficients of ad*_{grad h} l for the truncated asymptotic
// casimir gradient against the case seed
std::map<int, Vec> casimir_defect(const Grid1D& g, const JetMP& jet);
ResidualPlebanski casimir_defect(const Grid2D& g, const JetPlebanski& jet);

}  // namespace heavenly
