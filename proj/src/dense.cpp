#include "heavenly/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace heavenly {

namespace {

Vec matvec_impl(const DenseMatrix& m, const Vec& x, bool parallel) {
  if ((int)x.size() != m.cols) throw std::invalid_argument("matvec: size mismatch");
  Vec y(m.rows);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    const double* row = &m.a[std::size_t(i) * m.cols];
    for (int k = 0; k < m.cols; ++k) s += row[k] * x[k];
    y[i] = s;
  }
  return y;
}

DenseMatrix matmul_impl(const DenseMatrix& a, const DenseMatrix& b, bool parallel) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: size mismatch");
  DenseMatrix c(a.rows, b.cols);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < a.rows; ++i) {
    double* ci = &c.a[std::size_t(i) * c.cols];
    for (int k = 0; k < a.cols; ++k) {
      double aik = a(i, k);
      const double* bk = &b.a[std::size_t(k) * b.cols];
      for (int j = 0; j < b.cols; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

DenseMatrix transpose_impl(const DenseMatrix& m, bool parallel) {
  DenseMatrix t(m.cols, m.rows);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

DenseMatrix assemble_impl(int n, const std::function<Vec(const Vec&)>& op, bool parallel) {
  DenseMatrix m(n, n);
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < n; ++j) {
    Vec e(n, 0.0);
    e[j] = 1.0;
    Vec col = op(e);
    for (int i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

DenseMatrix table_impl(int rows, int cols, const std::function<double(int, int)>& f,
                       bool parallel) {
  DenseMatrix m(rows, cols);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = f(i, j);
  return m;
}

}  // namespace

namespace serial {
Vec matvec(const DenseMatrix& m, const Vec& x) { return matvec_impl(m, x, false); }
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) { return matmul_impl(a, b, false); }
DenseMatrix transpose(const DenseMatrix& m) { return transpose_impl(m, false); }
DenseMatrix assemble(int n, const std::function<Vec(const Vec&)>& op) {
  return assemble_impl(n, op, false);
}
DenseMatrix table(int rows, int cols, const std::function<double(int, int)>& f) {
  return table_impl(rows, cols, f, false);
}
}  // namespace serial

namespace par {
Vec matvec(const DenseMatrix& m, const Vec& x) { return matvec_impl(m, x, true); }
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) { return matmul_impl(a, b, true); }
DenseMatrix transpose(const DenseMatrix& m) { return transpose_impl(m, true); }
DenseMatrix assemble(int n, const std::function<Vec(const Vec&)>& op) {
  return assemble_impl(n, op, true);
}
DenseMatrix table(int rows, int cols, const std::function<double(int, int)>& f) {
  return table_impl(rows, cols, f, true);
}
}  // namespace par

void skew_enforce(DenseMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("skew_enforce: square only");
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = 0.5 * (m(i, j) - m(j, i));
      m(i, j) = v;
      m(j, i) = -v;
    }
  for (int i = 0; i < m.rows; ++i) m(i, i) = 0.0;
}

double skew_defect_matrix(const DenseMatrix& m) {
  double d = 0.0;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) d = std::max(d, std::fabs(m(i, j) + m(j, i)));
  return d;
}

double max_abs_matrix(const DenseMatrix& m) {
  double d = 0.0;
  for (double v : m.a) d = std::max(d, std::fabs(v));
  return d;
}

DenseMatrix scaled(const DenseMatrix& m, double c) {
  DenseMatrix out = m;
  for (double& v : out.a) v *= c;
  return out;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("add: size mismatch");
  DenseMatrix out = a;
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += b.a[i];
  return out;
}

}  // namespace heavenly
