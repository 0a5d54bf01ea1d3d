#include "heavenly/lax.hpp"

#include <algorithm>
#include <cmath>

namespace heavenly {

namespace {

double gap_rel(const Vec& a, const Vec& b) {
  double m = 0.0, s = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    m = std::max(m, std::abs(a[j] - b[j]));
    s = std::max(s, std::abs(b[j]));
  }
  return m / s;
}

void require_slots(std::initializer_list<const Vec*> slots, std::size_t want) {
  for (const Vec* f : slots)
    if (f->size() != want) throw std::invalid_argument("jet slot missing or missized");
}

}  // namespace

double jet_defect(const Grid1D& g, const JetMP& jet) {
  double worst = gap_rel(derivative(g, jet.u), jet.ux);
  worst = std::max(worst, gap_rel(derivative(g, jet.ux), jet.uxx));
  worst = std::max(worst, gap_rel(derivative(g, jet.uy), jet.uxy));
  worst = std::max(worst, gap_rel(derivative(g, jet.ut), jet.uxt));
  return worst;
}

double jet_defect(const Grid2D& g, const JetPlebanski& jet) {
  double worst = gap_rel(axis_derivative(g, jet.u, 0, 2), jet.u11);
  worst = std::max(worst, gap_rel(axis_derivative(g, jet.u, 1, 2), jet.u22));
  worst = std::max(
      worst, gap_rel(axis_derivative(g, axis_derivative(g, jet.u, 0, 1), 1, 1), jet.u12));
  return worst;
}

LaxPairMP build_pair(const Grid1D& g, const JetMP& jet) {
  const std::size_t n = std::size_t(g.n);
  require_slots({&jet.u, &jet.ux, &jet.uy, &jet.ut, &jet.uxx, &jet.uxy, &jet.uxt, &jet.uyy}, n);
  if (jet_defect(g, jet) > 1e-8) throw JetInconsistent("mp jet fails the spectral cross-check");

  LaxPairMP pair;
  pair.A.c[2] = {Vec(n, 1.0)};
  pair.A.c[1] = {jet.ux};
  Vec neg_uy(n);
  for (std::size_t j = 0; j < n; ++j) neg_uy[j] = -jet.uy[j];
  pair.A.c[0] = {neg_uy};
  pair.B.c[1] = {Vec(n, 1.0)};
  pair.B.c[0] = {jet.ux};
  return pair;
}

LaxPairPlebanski build_pair(const Grid2D& g, const JetPlebanski& jet) {
  const std::size_t total = std::size_t(g.n1) * g.n2;
  require_slots({&jet.u, &jet.ut, &jet.uy, &jet.u11, &jet.u12, &jet.u22}, total);
  if (jet_defect(g, jet) > 1e-8)
    throw JetInconsistent("plebanski jet fails the spectral cross-check");

  Vec neg_u12(total);
  for (std::size_t j = 0; j < total; ++j) neg_u12[j] = -jet.u12[j];

  LaxPairPlebanski pair;
  pair.A.c[1] = {Vec(total, 0.0), Vec(total, 1.0)};
  pair.A.c[0] = {jet.u22, neg_u12};
  pair.B.c[1] = {Vec(total, -1.0), Vec(total, 0.0)};
  pair.B.c[0] = {neg_u12, jet.u11};
  return pair;
}

ResidualMP compatibility_residual(const Grid1D& g, const LaxPairMP& pair, const JetMP& jet) {
  LaurentVectorField<1> comm = commutator(g, pair.A, pair.B);
  ResidualMP out;
  for (const auto& [p, comps] : comm.c) out[p] = comps[0];
  Vec& r0 = out[0];
  Vec& r1 = out[1];
  for (int j = 0; j < g.n; ++j) {
    r0[j] += jet.uxt[j] + jet.uyy[j];  // d_t B - d_y A, constant power
    r1[j] -= jet.uxy[j];
  }
  return out;
}

ResidualPlebanski compatibility_residual(const Grid2D& g, const LaxPairPlebanski& pair,
                                         const JetPlebanski& jet) {
  LaurentVectorField<2> comm = commutator(g, pair.A, pair.B);
  ResidualPlebanski out;
  for (const auto& [p, comps] : comm.c) out[p] = {comps[0], comps[1]};

  Vec ut1 = axis_derivative(g, jet.ut, 0, 1);
  Vec ut11 = axis_derivative(g, ut1, 0, 1);
  Vec ut12 = axis_derivative(g, ut1, 1, 1);
  Vec uy2 = axis_derivative(g, jet.uy, 1, 1);
  Vec uy12 = axis_derivative(g, axis_derivative(g, jet.uy, 0, 1), 1, 1);
  Vec uy22 = axis_derivative(g, uy2, 1, 1);

  auto& r0 = out[0];
  for (std::size_t k = 0; k < jet.u.size(); ++k) {
    r0[0][k] += -ut12[k] - uy22[k];
    r0[1][k] += ut11[k] + uy12[k];
  }
  return out;
}

Vec pde_residual(const Grid1D& g, const JetMP& jet) {
  Vec out(g.n);
  for (int j = 0; j < g.n; ++j)
    out[j] = jet.uxt[j] + jet.uyy[j] - jet.uy[j] * jet.uxx[j] + jet.ux[j] * jet.uxy[j];
  return out;
}

Vec pde_residual(const Grid2D& g, const JetPlebanski& jet) {
  Vec ut1 = axis_derivative(g, jet.ut, 0, 1);
  Vec uy2 = axis_derivative(g, jet.uy, 1, 1);
  Vec out(jet.u.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = ut1[k] + uy2[k] + jet.u11[k] * jet.u22[k] - jet.u12[k] * jet.u12[k];
  return out;
}

EquivalenceDefect equivalence_check(const Grid1D& g, const JetMP& jet) {
  LaxPairMP pair = build_pair(g, jet);
  ResidualMP r = compatibility_residual(g, pair, jet);
  Vec pde = pde_residual(g, jet);

  EquivalenceDefect d;
  d.scale = std::max({1.0, max_abs(pde), max_abs(jet.uxx), max_abs(jet.uxy)});
  for (const auto& [p, f] : r) {
    if (p == 0) {
      for (int j = 0; j < g.n; ++j) d.zero_gap = std::max(d.zero_gap, std::abs(f[j] - pde[j]));
    } else {
      d.tail = std::max(d.tail, max_abs(f));
    }
  }
  return d;
}

EquivalenceDefect equivalence_check(const Grid2D& g, const JetPlebanski& jet) {
  LaxPairPlebanski pair = build_pair(g, jet);
  ResidualPlebanski r = compatibility_residual(g, pair, jet);
  Vec pde = pde_residual(g, jet);
  Vec t1 = axis_derivative(g, pde, 0, 1);
  Vec t2 = axis_derivative(g, pde, 1, 1);

  EquivalenceDefect d;
  d.scale = std::max({1.0, max_abs(t1), max_abs(t2), max_abs(jet.u11), max_abs(jet.u22)});
  for (const auto& [p, comps] : r) {
    if (p == 0) {
      for (std::size_t k = 0; k < pde.size(); ++k) {
        d.zero_gap = std::max(d.zero_gap, std::abs(comps[0][k] + t2[k]));
        d.zero_gap = std::max(d.zero_gap, std::abs(comps[1][k] - t1[k]));
      }
    } else {
      d.tail = std::max({d.tail, max_abs(comps[0]), max_abs(comps[1])});
    }
  }
  return d;
}

std::map<int, Vec> casimir_defect(const Grid1D& g, const JetMP& jet) {
  const std::size_t n = std::size_t(g.n);
  require_slots({&jet.ux, &jet.uy}, n);

  LaurentVectorField<1> grad;
  grad.c[0] = {Vec(n, 1.0)};
  grad.c[-1] = {jet.ux};
  Vec neg_uy(n);
  for (std::size_t j = 0; j < n; ++j) neg_uy[j] = -jet.uy[j];
  grad.c[-2] = {neg_uy};

  LaurentOneForm<1> seed;
  seed.c[1] = {Vec(n, 1.0)};
  Vec m2(n);
  for (std::size_t j = 0; j < n; ++j) m2[j] = -2.0 * jet.ux[j];
  seed.c[0] = {m2};

  LaurentOneForm<1> act = coadjoint_action(g, grad, seed);
  std::map<int, Vec> out;
  for (const auto& [p, comps] : act.c) out[p] = comps[0];
  return out;
}

ResidualPlebanski casimir_defect(const Grid2D& g, const JetPlebanski& jet) {
  const std::size_t total = std::size_t(g.n1) * g.n2;
  require_slots({&jet.u11, &jet.u12, &jet.u22}, total);

  Vec neg_u12(total);
  for (std::size_t j = 0; j < total; ++j) neg_u12[j] = -jet.u12[j];

  LaurentVectorField<2> grad;
  grad.c[0] = {Vec(total, 0.0), Vec(total, 1.0)};
  grad.c[-1] = {jet.u22, neg_u12};

  // seed slopes of u0 = u_x1 - u_x2 in each direction
  Vec w1(total), w2(total);
  for (std::size_t j = 0; j < total; ++j) {
    w1[j] = jet.u11[j] - jet.u12[j];
    w2[j] = jet.u12[j] - jet.u22[j];
  }
  LaurentOneForm<2> seed;
  seed.c[1] = {Vec(total, 1.0), Vec(total, 1.0)};
  seed.c[0] = {w1, w2};

  LaurentOneForm<2> act = coadjoint_action(g, grad, seed);
  ResidualPlebanski out;
  for (const auto& [p, comps] : act.c) out[p] = {comps[0], comps[1]};
  return out;
}

}  // namespace heavenly
