#pragma once

#include "heavenly/grid.hpp"

#include <cstring>
#include <functional>

namespace heavenly {

struct DenseMatrix {
  int rows = 0, cols = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[std::size_t(i) * cols + j]; }
  double operator()(int i, int j) const { return a[std::size_t(i) * cols + j]; }
};

// Serial twins are the reference; the par versions must match them bitwise
// (static schedule, each output element computed by exactly one thread with
// the same inner summation order).
namespace serial {
Vec matvec(const DenseMatrix& m, const Vec& x);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& m);
DenseMatrix assemble(int n, const std::function<Vec(const Vec&)>& op);
DenseMatrix table(int rows, int cols, const std::function<double(int, int)>& f);
}  // namespace serial

namespace par {
Vec matvec(const DenseMatrix& m, const Vec& x);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& m);
DenseMatrix assemble(int n, const std::function<Vec(const Vec&)>& op);
DenseMatrix table(int rows, int cols, const std::function<double(int, int)>& f);
}  // namespace par

// m <- (m - m^T)/2, making skewness a bitwise property
void skew_enforce(DenseMatrix& m);

double skew_defect_matrix(const DenseMatrix& m);  // max |m + m^T| entry
double max_abs_matrix(const DenseMatrix& m);

DenseMatrix scaled(const DenseMatrix& m, double c);
DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace heavenly
