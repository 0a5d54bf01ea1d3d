#pragma once

#include "heavenly/grid.hpp"

#include <array>
#include <cmath>
#include <map>

namespace heavenly {

// Laurent polynomials in lambda with grid-function coefficients; one component
// per torus dimension. Sparse by power, and every algebra element here stays a
// finite sum, so no truncation is ever needed.
template <int Dim>
using Components = std::array<Vec, Dim>;

template <int Dim>
struct LaurentVectorField {
  std::map<int, Components<Dim>> c;
};

template <int Dim>
struct LaurentOneForm {
  std::map<int, Components<Dim>> c;
};

inline Vec pd(const Grid1D& g, const Vec& f, int axis) {
  if (axis != 0) throw std::invalid_argument("pd: 1d field has axis 0 only");
  return derivative(g, f, 1);
}
inline Vec pd(const Grid2D& g, const Vec& f, int axis) { return axis_derivative(g, f, axis, 1); }

inline double ip(const Grid1D& g, const Vec& a, const Vec& b) { return inner_product(g, a, b); }
inline double ip(const Grid2D& g, const Vec& a, const Vec& b) { return inner_product(g, a, b); }

inline std::size_t field_size(const Grid1D& g) { return std::size_t(g.n); }
inline std::size_t field_size(const Grid2D& g) { return std::size_t(g.n1) * g.n2; }

namespace detail {

template <int Dim>
void ensure_sized(Components<Dim>& comps, std::size_t sz) {
  for (int j = 0; j < Dim; ++j)
    if (comps[j].size() != sz) comps[j].assign(sz, 0.0);
}

template <int Dim>
double coeffs_norm_inf(const std::map<int, Components<Dim>>& c) {
  double m = 0.0;
  for (const auto& [p, comps] : c)
    for (int j = 0; j < Dim; ++j) m = std::max(m, max_abs(comps[j]));
  return m;
}

template <int Dim>
void coeffs_axpy(std::map<int, Components<Dim>>& dst, const std::map<int, Components<Dim>>& src,
                 double alpha) {
  for (const auto& [p, comps] : src) {
    auto& d = dst[p];
    for (int j = 0; j < Dim; ++j) {
      if (d[j].empty()) d[j].assign(comps[j].size(), 0.0);
      for (std::size_t t = 0; t < comps[j].size(); ++t) d[j][t] += alpha * comps[j][t];
    }
  }
}

template <int Dim>
void coeffs_scale(std::map<int, Components<Dim>>& c, double alpha) {
  for (auto& [p, comps] : c)
    for (int j = 0; j < Dim; ++j)
      for (double& v : comps[j]) v *= alpha;
}

}  // namespace detail

template <int D>
double norm_inf(const LaurentVectorField<D>& a) {
  return detail::coeffs_norm_inf<D>(a.c);
}
template <int D>
double norm_inf(const LaurentOneForm<D>& l) {
  return detail::coeffs_norm_inf<D>(l.c);
}

template <int D>
void axpy(LaurentVectorField<D>& dst, const LaurentVectorField<D>& src, double alpha) {
  detail::coeffs_axpy<D>(dst.c, src.c, alpha);
}
template <int D>
void axpy(LaurentOneForm<D>& dst, const LaurentOneForm<D>& src, double alpha) {
  detail::coeffs_axpy<D>(dst.c, src.c, alpha);
}

template <int D>
void scale(LaurentVectorField<D>& a, double alpha) {
  detail::coeffs_scale<D>(a.c, alpha);
}
template <int D>
void scale(LaurentOneForm<D>& l, double alpha) {
  detail::coeffs_scale<D>(l.c, alpha);
}

// [a,b]_j at power k: sum over p+q=k of sum_i (a_i^p pd_i b_j^q - b_i^p pd_i a_j^q)
template <class G, int D>
LaurentVectorField<D> commutator(const G& g, const LaurentVectorField<D>& a,
                                 const LaurentVectorField<D>& b) {
  const std::size_t sz = field_size(g);
  auto partials = [&](const LaurentVectorField<D>& v) {
    std::map<int, std::array<std::array<Vec, D>, D>> out;  // [power][j][i] = pd_i v_j
    for (const auto& [p, comps] : v.c) {
      auto& slot = out[p];
      for (int j = 0; j < D; ++j)
        for (int i = 0; i < D; ++i) slot[j][i] = pd(g, comps[j], i);
    }
    return out;
  };
  auto da = partials(a);
  auto db = partials(b);

  LaurentVectorField<D> out;
  for (const auto& [p, ac] : a.c)
    for (const auto& [q, bc] : b.c) {
      auto& res = out.c[p + q];
      detail::ensure_sized<D>(res, sz);
      const auto& dbq = db.at(q);
      const auto& dap = da.at(p);
      for (int j = 0; j < D; ++j) {
        Vec& r = res[j];
        for (int i = 0; i < D; ++i) {
          const Vec& ai = ac[i];
          const Vec& bi = bc[i];
          const Vec& dbji = dbq[j][i];
          const Vec& daji = dap[j][i];
          for (std::size_t t = 0; t < sz; ++t) r[t] += ai[t] * dbji[t] - bi[t] * daji[t];
        }
      }
    }
  return out;
}

// Splitting: lambda^k with k >= 0 is the plus subalgebra.
template <int D>
LaurentVectorField<D> project(const LaurentVectorField<D>& a, int sign) {
  LaurentVectorField<D> out;
  for (const auto& [p, comps] : a.c)
    if ((sign > 0 && p >= 0) || (sign < 0 && p < 0)) out.c[p] = comps;
  return out;
}

template <int D>
LaurentVectorField<D> r_multiply(const LaurentVectorField<D>& a) {  // (P+ - P-)/2
  LaurentVectorField<D> out = a;
  for (auto& [p, comps] : out.c) {
    double f = p >= 0 ? 0.5 : -0.5;
    for (int j = 0; j < D; ++j)
      for (double& v : comps[j]) v *= f;
  }
  return out;
}

template <class G, int D>
LaurentVectorField<D> r_bracket(const G& g, const LaurentVectorField<D>& a,
                                const LaurentVectorField<D>& b) {
  auto out = commutator(g, r_multiply(a), b);
  axpy(out, commutator(g, a, r_multiply(b)), 1.0);
  return out;
}

// res lambda^{-p} (l|a): sum of component inner products over r+s = p-1
template <class G, int D>
double residue_pairing(const G& g, const LaurentOneForm<D>& l, const LaurentVectorField<D>& a,
                       int p) {
  double sum = 0.0;
  for (const auto& [r, lc] : l.c) {
    auto it = a.c.find(p - 1 - r);
    if (it == a.c.end()) continue;
    for (int j = 0; j < D; ++j) sum += ip(g, lc[j], it->second[j]);
  }
  return sum;
}

// (ad*_a l)_j = sum_i pd_i(l_j a_i) + sum_i l_i pd_j(a_i), graded by power sum.
// Satisfies (ad*_a l | b) = -(l | [a,b]); the explicit form is O(n) per power pair.
template <class G, int D>
LaurentOneForm<D> coadjoint_action(const G& g, const LaurentVectorField<D>& a,
                                   const LaurentOneForm<D>& l) {
  const std::size_t sz = field_size(g);
  LaurentOneForm<D> out;
  Vec prod(sz);
  for (const auto& [q, ac] : a.c) {
    // pd_j a_i reused across l powers
    std::array<std::array<Vec, D>, D> dai;
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) dai[i][j] = pd(g, ac[i], j);
    for (const auto& [r, lc] : l.c) {
      auto& res = out.c[q + r];
      detail::ensure_sized<D>(res, sz);
      for (int j = 0; j < D; ++j) {
        Vec& rj = res[j];
        for (int i = 0; i < D; ++i) {
          for (std::size_t t = 0; t < sz; ++t) prod[t] = lc[j][t] * ac[i][t];
          Vec dprod = pd(g, prod, i);
          const Vec& daij = dai[i][j];
          const Vec& li = lc[i];
          for (std::size_t t = 0; t < sz; ++t) rj[t] += dprod[t] + li[t] * daij[t];
        }
      }
    }
  }
  return out;
}

}  // namespace heavenly
