#ifndef LIFTPROJ_DUAL_CONE_HPP_
#define LIFTPROJ_DUAL_CONE_HPP_

// Matrix cones generated by products of Q* rays and the rows of K, plus the
// subspaces orthogonal to the diagonal-consistency conditions. Membership is
// decided by exact LPs; separators are elements of the dual cone.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liftproj/cone.hpp"
#include "liftproj/errors.hpp"
#include "liftproj/lp.hpp"
#include "liftproj/rational.hpp"
#include "liftproj/sdp.hpp"

namespace liftproj {

enum class GenVariant { Symmetric, Nonsymmetric };

struct MatrixConeGens {
  std::size_t d = 0;
  GenVariant variant = GenVariant::Symmetric;
  std::vector<RMat> cone;      // nonnegative combinations
  std::vector<RMat> subspace;  // arbitrary combinations
};

/// Rays of Q*: e_i and e0 - e_i for i = 1..d.
inline std::vector<RVec> qstar_rays(std::size_t d) {
  std::vector<RVec> out;
  for (std::size_t i = 1; i <= d; ++i) {
    RVec e(d + 1);
    e[i] = 1;
    out.push_back(e);
    RVec f(d + 1);
    f[0] = 1;
    f[i] = -1;
    out.push_back(f);
  }
  return out;
}

inline MatrixConeGens build_gens(const HCone& k, GenVariant variant) {
  const std::size_t d = k.d(), n = d + 1;
  MatrixConeGens g;
  g.d = d;
  g.variant = variant;
  for (const auto& u : qstar_rays(d)) {
    for (const auto& v : k.rows()) {
      RMat m = RMat::outer(u, v);
      if (variant == GenVariant::Symmetric) m += RMat::outer(v, u);
      g.cone.push_back(std::move(m));
    }
  }
  for (std::size_t i = 1; i <= d; ++i) {
    if (variant == GenVariant::Symmetric) {
      // E_ii - E_0i with E_ij = e_i e_j^T + e_j e_i^T
      RMat m(n, n);
      m(i, i) = 2;
      m(0, i) = -1;
      m(i, 0) = -1;
      g.subspace.push_back(std::move(m));
    } else {
      RMat a(n, n), b(n, n);
      a(i, i) = 1;
      a(0, i) = -1;
      b(i, i) = 1;
      b(i, 0) = -1;
      g.subspace.push_back(std::move(a));
      g.subspace.push_back(std::move(b));
    }
  }
  return g;
}

namespace detail {

// Coordinates of a matrix: upper triangle for the symmetric variant, all
// entries otherwise.
inline std::vector<std::pair<std::size_t, std::size_t>> matrix_coords(std::size_t n, GenVariant v) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = v == GenVariant::Symmetric ? i : 0; j < n; ++j) out.emplace_back(i, j);
  return out;
}

// Coefficient of the (i,j) coordinate of W in <W, M> when W is symmetric
// and parametrized by its upper triangle.
inline Rational pair_weight(const RMat& m, std::size_t i, std::size_t j, GenVariant v) {
  if (v == GenVariant::Nonsymmetric || i == j) return m(i, j);
  return m(i, j) + m(j, i);
}

inline RMat matrix_from_coords(const RVec& w, std::size_t n, GenVariant v) {
  RMat m(n, n);
  auto coords = matrix_coords(n, v);
  for (std::size_t k = 0; k < coords.size(); ++k) {
    auto [i, j] = coords[k];
    m(i, j) = w[k];
    if (v == GenVariant::Symmetric) m(j, i) = w[k];
  }
  return m;
}

}  // namespace detail

struct ConeMembership {
  bool member = false;
  RVec cone_coefficients;      // when member: >= 0, one per cone generator
  RVec subspace_coefficients;  // when member
  RMat separator;              // when not: <W, G> >= 0, <W, B> = 0, W00 = 1
  Rational separation;         // <W, S> < 0, the smallest over normalized W
};

/// Deepest W in the dual cone (T* intersected with the annihilator of the
/// subspace) with W00 = 1: minimizes <W, S>. nullopt when that set is empty.
inline std::optional<std::pair<RMat, Rational>> deepest_dual(const MatrixConeGens& g, const RMat& s) {
  const std::size_t n = g.d + 1;
  auto coords = detail::matrix_coords(n, g.variant);
  LinearProgram lp(coords.size());
  auto row_of = [&](const RMat& m) {
    RVec a(coords.size());
    for (std::size_t k = 0; k < coords.size(); ++k) a[k] = detail::pair_weight(m, coords[k].first, coords[k].second, g.variant);
    return a;
  };
  for (const auto& m : g.cone) lp.geq(row_of(m), 0);
  for (const auto& m : g.subspace) lp.eq(row_of(m), 0);
  RVec top(coords.size());
  top[0] = 1;  // coordinate (0,0) comes first in both layouts
  lp.eq(top, 1);
  lp.objective = row_of(s);
  lp.sense = Sense::Minimize;
  LpOutcome out = lp_solve(lp);
  if (out.status == LpStatus::Infeasible) return std::nullopt;
  if (out.status == LpStatus::Unbounded) throw NumericalFailure("deepest_dual: unbounded on a bounded cone");
  return std::make_pair(detail::matrix_from_coords(out.primal, n, g.variant), out.value);
}

/// Exact membership of S in cone(gens) + span(subspace).
inline ConeMembership member_gens(const MatrixConeGens& g, const RMat& s) {
  const std::size_t n = g.d + 1;
  if (s.rows() != n || s.cols() != n) throw DimensionError("member_t_dperp: matrix size must be d+1");
  if (g.variant == GenVariant::Symmetric && !s.symmetric()) throw DomainError("member_t_dperp: matrix must be symmetric");
  const std::size_t nc = g.cone.size(), ns = g.subspace.size();
  auto coords = detail::matrix_coords(n, g.variant);
  LinearProgram lp(nc + ns);
  for (auto [i, j] : coords) {
    RVec a(nc + ns);
    for (std::size_t t = 0; t < nc; ++t) a[t] = g.cone[t](i, j);
    for (std::size_t t = 0; t < ns; ++t) a[nc + t] = g.subspace[t](i, j);
    lp.eq(std::move(a), s(i, j));
  }
  for (std::size_t t = 0; t < nc; ++t) {
    RVec a(nc + ns);
    a[t] = 1;
    lp.geq(std::move(a), 0);
  }
  LpOutcome out = lp_solve(lp);
  ConeMembership res;
  if (out.status != LpStatus::Infeasible) {
    res.member = true;
    res.cone_coefficients.assign(out.primal.begin(), out.primal.begin() + static_cast<long>(nc));
    res.subspace_coefficients.assign(out.primal.begin() + static_cast<long>(nc), out.primal.end());
    RMat sum(n, n);
    for (std::size_t t = 0; t < nc; ++t)
      if (sgn(res.cone_coefficients[t]) != 0) sum += g.cone[t] * res.cone_coefficients[t];
    for (std::size_t t = 0; t < ns; ++t)
      if (sgn(res.subspace_coefficients[t]) != 0) sum += g.subspace[t] * res.subspace_coefficients[t];
    if (!(sum == s)) throw NumericalFailure("member_t_dperp: combination does not reproduce the matrix");
    return res;
  }
  auto deep = deepest_dual(g, s);
  if (!deep || sgn(deep->second) >= 0) throw NumericalFailure("member_t_dperp: no separator for a non-member");
  res.separator = std::move(deep->first);
  res.separation = deep->second;
  for (const auto& m : g.cone)
    if (sgn(frobenius(res.separator, m)) < 0) throw NumericalFailure("member_t_dperp: separator leaves the dual cone");
  for (const auto& m : g.subspace)
    if (sgn(frobenius(res.separator, m)) != 0) throw NumericalFailure("member_t_dperp: separator not orthogonal");
  return res;
}

inline ConeMembership member_t_dperp(const HCone& k, const RMat& s, GenVariant variant = GenVariant::Symmetric) {
  return member_gens(build_gens(k, variant), s);
}

struct DualCheck {
  bool member = false;
  std::string reason;  // first failing condition
};

/// Y in [T(K)]* with diag(Y) = Y e0, i.e. Y in M(K).
inline DualCheck dual_member_check(const HCone& k, const RMat& y) {
  const std::size_t n = k.d() + 1;
  if (y.rows() != n || y.cols() != n) throw DimensionError("dual_member: matrix size must be d+1");
  if (!y.symmetric()) throw DomainError("dual_member: matrix must be symmetric");
  DualCheck out;
  for (std::size_t i = 0; i < n; ++i) {
    if (y(i, i) != y(i, 0)) {
      out.reason = "diag(Y) differs from Y e0 at index " + std::to_string(i);
      return out;
    }
  }
  const auto us = qstar_rays(k.d());
  for (const auto& u : us) {
    RVec col = y * u;
    for (const auto& v : k.rows()) {
      if (sgn(dot(v, col)) < 0) {
        out.reason = "<Y, u v^T + v u^T> < 0 for u = (" + render(u) + "), v = (" + render(v) + ")";
        return out;
      }
    }
  }
  out.member = true;
  return out;
}

inline bool dual_member(const HCone& k, const RMat& y) { return dual_member_check(k, y).member; }

struct SkewCheck {
  bool holds = true;
  std::size_t i = 0, j = 0;  // first failing pair when not
  bool negative = false;     // whether the failing matrix was the negated one
};

/// Tests +-(e_i e_j^T - e_j e_i^T) in T0(K) + D0-perp for every pair i < j.
/// Every nonzero element of the dual cone has W00 > 0 because K lies in the
/// box, so minimizing over W00 = 1 decides membership.
inline SkewCheck thm63_skew_check(const HCone& k) {
  const std::size_t d = k.d(), n = d + 1;
  MatrixConeGens g = build_gens(k, GenVariant::Nonsymmetric);
  SkewCheck out;
  for (std::size_t i = 1; i <= d; ++i) {
    for (std::size_t j = i + 1; j <= d; ++j) {
      for (bool neg : {false, true}) {
        RMat a(n, n);
        a(i, j) = neg ? -1 : 1;
        a(j, i) = neg ? 1 : -1;
        // Dual form: A is in the cone iff <W, A> >= 0 on the normalized dual.
        auto deep = deepest_dual(g, a);
        if (deep && sgn(deep->second) < 0) {
          out.holds = false;
          out.i = i;
          out.j = j;
          out.negative = neg;
          return out;
        }
      }
    }
  }
  return out;
}

struct DiagPremise {
  SdpStatus premise = SdpStatus::Inconclusive;  // Diag(s) in T + D-perp + PSD
  double premise_margin = 0;
  bool conclusion = false;                      // Diag(s) in T + D-perp, exact
};

/// Pointwise test of the implication "Diag(s) in T(K) + D-perp + S+ implies
/// Diag(s) in T(K) + D-perp". The premise is decided by the SDP solver and is
/// only as reliable as its tolerance.
inline DiagPremise diag_premise_check(const HCone& k, const RVec& s, double eps = 1e-8) {
  const std::size_t n = k.d() + 1;
  if (s.size() != n) throw DimensionError("diag_premise_check: s must have length d+1");
  MatrixConeGens g = build_gens(k, GenVariant::Symmetric);
  DiagPremise out;
  RMat ds = RMat::diagonal(s);
  out.conclusion = member_gens(g, ds).member;

  // P(y) = Diag(s) - sum lambda G - sum mu B must be PSD, lambda >= 0.
  const std::size_t nc = g.cone.size(), ns = g.subspace.size();
  SdpProblem p;
  p.variables = nc + ns;
  p.objective = Vec::Zero(static_cast<Eigen::Index>(p.variables));
  p.eps = eps;
  LmiBlock blk(n);
  auto to_mat = [n](const RMat& m) {
    Mat out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(m(i, j));
    return out;
  };
  blk.f0 = to_mat(ds);
  for (std::size_t t = 0; t < nc; ++t) {
    blk.coef(t) = -to_mat(g.cone[t]);
    SparseRow r;
    r.terms.emplace_back(t, 1.0);
    p.inequalities.push_back(std::move(r));
  }
  for (std::size_t t = 0; t < ns; ++t) blk.coef(nc + t) = -to_mat(g.subspace[t]);
  p.blocks.push_back(std::move(blk));
  SdpOutcome res = sdp_feasibility(p);
  out.premise = res.status;
  out.premise_margin = res.margin;
  return out;
}

}  // namespace liftproj

#endif  // LIFTPROJ_DUAL_CONE_HPP_
