#pragma once

#include <array>

#include "heavenly/dense.hpp"
#include "heavenly/grid.hpp"
#include "heavenly/loop_algebra.hpp"

namespace heavenly {

// l~_p = lambda^(p+1) dx + lambda^p u0 dx with u0 = -2 u_x
struct MpSeed {
  int p = 0;
  Vec u;
  Vec u0;
  LaurentOneForm<1> form;
};

// l~_p = lambda^p (lambda + w1) dx1 + lambda^p (lambda + w2) dx2,
// w_j the partials of u0 = u_{x1} - u_{x2}
struct PlebSeed {
  int p = 0;
  Vec u;
  Vec u0;
  Vec w1, w2;
  LaurentOneForm<2> form;
};

MpSeed make_seed(const Grid1D& g, const Vec& u, int p);
PlebSeed make_seed(const Grid2D& g, const Vec& u, int p);

// gradient of the coordinate functional u0(s): a single delta (resp. a
// green x delta profile) at the power that pairs back against l~_p
LaurentVectorField<1> coordinate_gradient(const Grid1D& g, int p, double s);
LaurentVectorField<2> coordinate_gradient(const Grid2D& g, int p, double s1, double s2);

// (l~_p | grad u0(s))_0; recovers u0 at the nearest node for band-limited u
double evaluate_coordinate(const Grid1D& g, const MpSeed& seed, double s);
double evaluate_coordinate(const Grid2D& g, const PlebSeed& seed, double s1, double s2);

// (l~_p | [grad u0(t1), grad u0(t2)]_R)_0
double bracket_numeric(const Grid1D& g, const MpSeed& seed, double s1, double s2);
double bracket_numeric(const Grid2D& g, const PlebSeed& seed, const std::array<double, 2>& t1,
                       const std::array<double, 2>& t2);

// discretized closed-form kernels: -2 delta'(s1-s2) at p=0 and
// delta'(s1-s2)(u0(s1)+u0(s2)) at p=-1 on the line, and
// (w1(t1)+w1(t2)) G(s3-s1) delta(s4-s2) on the plane (p=-1 only; the
// plane p=0 kernel has no pointwise closed form, so asking for it throws).
// Inactive powers return exact zero.
double bracket_closed(const Grid1D& g, const MpSeed& seed, double s1, double s2);
double bracket_closed(const Grid2D& g, const PlebSeed& seed, const std::array<double, 2>& t1,
                      const std::array<double, 2>& t2);

// the only powers whose kernels survive; everything else pairs to zero
constexpr std::array<int, 2> active_bracket_powers() { return {-1, 0}; }

// kernel over every node pair of the 1d grid
DenseMatrix kernel_table_numeric(const Grid1D& g, const MpSeed& seed, bool parallel = false);

// push a u0-coordinate kernel table to u coordinates: (1/4) A K A^T with A
// the zero-mean antiderivative matrix
DenseMatrix integrate_kernel_table(const Grid1D& g, const DenseMatrix& k);

}  // namespace heavenly
