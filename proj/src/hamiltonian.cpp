#include "heavenly/hamiltonian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heavenly/poisson_suite.hpp"
#include "heavenly/random.hpp"

namespace heavenly {

namespace {

// gauss-legendre nodes on [-1,1], mapped below to [0,1]
const double kNode[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                         0.5384693101056831, 0.9061798459386640};
const double kWeight[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                           0.4786286704993665, 0.2369268850561891};

double slot_fd(const std::function<double(double, double, double)>& f, double a, double b,
               double c, int slot) {
  const double h = 1e-6;
  double lo[3] = {a, b, c}, hi[3] = {a, b, c};
  lo[slot] -= h;
  hi[slot] += h;
  return (f(hi[0], hi[1], hi[2]) - f(lo[0], lo[1], lo[2])) / (2.0 * h);
}

}  // namespace

double density_slot_defect(const LocalDensity& d, std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    double u = 2.0 * rng.uniform();
    double ux = 2.0 * rng.uniform();
    double uxx = 2.0 * rng.uniform();
    const std::function<double(double, double, double)>* part[3] = {&d.fu, &d.fux, &d.fuxx};
    for (int slot = 0; slot < 3; ++slot) {
      double fd = slot_fd(d.f, u, ux, uxx, slot);
      double an = (*part[slot])(u, ux, uxx);
      worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
    }
  }
  return worst;
}

double Functional::value(const Grid1D& g, const Vec& u) const {
  Vec ux = derivative(g, u);
  Vec uxx = derivative(g, u, 2);
  double acc = 0.0;
  for (int j = 0; j < g.n; ++j) acc += density.f(u[j], ux[j], uxx[j]);
  return acc * g.h;
}

Vec variational_derivative(const Grid1D& g, const LocalDensity& d, const Vec& u) {
  Vec ux = derivative(g, u);
  Vec uxx = derivative(g, u, 2);
  Vec a(g.n), b(g.n), c(g.n);
  for (int j = 0; j < g.n; ++j) {
    a[j] = d.fu(u[j], ux[j], uxx[j]);
    b[j] = d.fux(u[j], ux[j], uxx[j]);
    c[j] = d.fuxx(u[j], ux[j], uxx[j]);
  }
  Vec db = derivative(g, b);
  Vec d2c = derivative(g, c, 2);
  Vec out(g.n);
  for (int j = 0; j < g.n; ++j) out[j] = a[j] - db[j] + d2c[j];
  return out;
}

Vec gateaux_gradient(const Grid1D& g, const Functional& F, const Vec& u) {
  double eps = 1e-5 * std::max(1.0, max_abs(u));
  Vec grad(g.n);
  Vec probe = u;
  for (int j = 0; j < g.n; ++j) {
    double keep = probe[j];
    probe[j] = keep + eps;
    double hi = F.value(g, probe);
    probe[j] = keep - eps;
    double lo = F.value(g, probe);
    probe[j] = keep;
    grad[j] = (hi - lo) / (2.0 * eps * g.h);
  }
  return grad;
}

double homotopy_reconstruct(const Grid1D& g, const GradField& grad, const Vec& u) {
  double acc = 0.0;
  for (int q = 0; q < 5; ++q) {
    double mu = 0.5 * (1.0 + kNode[q]);
    Vec scaled(g.n);
    for (int j = 0; j < g.n; ++j) scaled[j] = mu * u[j];
    acc += 0.5 * kWeight[q] * inner_product(g, grad(scaled), u);
  }
  return acc;
}

Vec t_flow_gradient(const Grid1D& g, const Vec& slope) {
  double m2 = 0.0, m3 = 0.0;
  for (int j = 0; j < g.n; ++j) {
    m2 += slope[j] * slope[j];
    m3 += slope[j] * slope[j] * slope[j];
  }
  m2 /= g.n;
  m3 /= g.n;
  // torus form of the t-flow rhs; the bare -(5/2)u_x^3 is off the operator's
  // range here, the affine part puts it back
  Vec rhs(g.n);
  for (int j = 0; j < g.n; ++j)
    rhs[j] = -2.5 * slope[j] * slope[j] * slope[j] + 1.5 * m2 * slope[j] + m3;

  PoissonOperator theta = theta_minus1(g, slope);
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::MatrixXd m = Eigen::Map<const RowMat>(theta.m.a.data(), g.n, g.n);
  Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(rhs.data(), g.n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  Eigen::VectorXd x = svd.solve(r);
  Vec out(g.n);
  for (int j = 0; j < g.n; ++j) out[j] = x[j];
  return out;
}

TFlowReconstruction t_flow_hamiltonian(const Grid1D& g, const Vec& slope) {
  Vec x = t_flow_gradient(g, slope);
  // slope-space gradient up to its mean: x = -D grad
  Vec anti = antiderivative_projected(g, x);
  Vec gmf(g.n);
  for (int j = 0; j < g.n; ++j) gmf[j] = -anti[j];

  double m1 = mean(slope);
  Vec p1(g.n), p2(g.n);
  double m2 = 0.0;
  for (int j = 0; j < g.n; ++j) m2 += slope[j] * slope[j];
  m2 /= g.n;
  for (int j = 0; j < g.n; ++j) {
    p1[j] = slope[j] - m1;
    p2[j] = slope[j] * slope[j] - m2;
  }
  double g11 = inner_product(g, p1, p1);
  double g12 = inner_product(g, p1, p2);
  double g22 = inner_product(g, p2, p2);
  double r1 = inner_product(g, p1, gmf);
  double r2 = inner_product(g, p2, gmf);
  double det = g11 * g22 - g12 * g12;
  if (std::abs(det) < 1e-30) throw std::runtime_error("degenerate closure basis");
  double b = (g22 * r1 - g12 * r2) / det;
  double c = (g11 * r2 - g12 * r1) / det;

  TFlowReconstruction out;
  double resid = 0.0, scale = 1.0;
  for (int j = 0; j < g.n; ++j) {
    resid = std::max(resid, std::abs(gmf[j] - b * p1[j] - c * p2[j]));
    scale = std::max(scale, std::abs(gmf[j]));
  }
  out.closure_defect = resid / scale;

  GradField closure = [b, c](const Vec& v) {
    Vec grad(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) grad[j] = b * v[j] + c * v[j] * v[j];
    return grad;
  };
  out.value = homotopy_reconstruct(g, closure, slope);
  return out;
}

}  // namespace heavenly
