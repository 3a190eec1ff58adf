#ifndef LIFTPROJ_LSPLUS_HPP_
#define LIFTPROJ_LSPLUS_HPP_

// The semidefinite operator N+: nested SDP systems, explicit certificates and
// sufficient conditions for membership and rank.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "liftproj/cone.hpp"
#include "liftproj/exact_linalg.hpp"
#include "liftproj/lifted.hpp"
#include "liftproj/sdp.hpp"

namespace liftproj {

/// Turns a nested N+ system into an LMI problem over the same variables: one
/// PSD block per internal node (index 0 plus the node's free coordinates),
/// the leaf rows as linear rows, and x0 = 1.
inline SdpProblem compile_sdp(const LiftedSystem& sys, const RVec& c, double eps = 1e-8) {
  SdpProblem p;
  p.variables = sys.variables;
  p.eps = eps;
  p.variable_bound = 1.0;  // entries of every node matrix lie in [0, x0]
  p.objective = Vec::Zero(static_cast<Eigen::Index>(sys.variables));
  for (std::size_t i = 0; i < c.size(); ++i) p.objective[static_cast<Eigen::Index>(i)] = c[i].get_d();
  const std::size_t n = sys.d + 1;
  for (const auto& node : sys.nodes) {
    if (node.leaf()) continue;
    const std::size_t m = node.reduced.size();
    LmiBlock b(m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t bb = 0; bb < m; ++bb) {
        const LinForm& f = node.y[node.reduced[a] * n + node.reduced[bb]];
        for (const auto& [v, coef] : f.terms())
          b.coef(v)(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(bb)) += coef.get_d();
      }
    p.blocks.push_back(std::move(b));
  }
  for (const auto& row : sys.rows) {
    SparseRow r;
    for (const auto& [v, coef] : row.form.terms()) r.terms.emplace_back(v, coef.get_d());
    (row.rel == Relation::Eq ? p.equalities : p.inequalities).push_back(std::move(r));
  }
  SparseRow x0;
  x0.terms.emplace_back(0, 1.0);
  x0.constant = -1.0;
  p.equalities.push_back(std::move(x0));
  return p;
}

struct NPlusResult {
  SdpStatus status = SdpStatus::NumericalFailure;  // Optimal, Infeasible (empty), ...
  double value = 0;
  SdpOutcome outcome;
  LiftedSystem system;
};

inline double sdp_eps_from_env() {
  if (const char* v = std::getenv("LIFTPROJ_SDP_EPS")) {
    char* end = nullptr;
    double x = std::strtod(v, &end);
    if (end && *end == '\0' && x > 0) return x;
  }
  return 1e-8;
}

/// max c^T x over the x0 = 1 slice of N+^r(K), to solver tolerance.
inline NPlusResult nplus_optimize(const HCone& k, std::size_t r, const RVec& c, const Guards& g = Guards::from_env(),
                                  double eps = sdp_eps_from_env()) {
  if (c.size() != k.d() + 1) throw DimensionError("objective must have d+1 entries");
  NPlusResult res;
  if (r == 0) {
    auto v = slice_optimum(k, c);
    res.status = v ? SdpStatus::Optimal : SdpStatus::Infeasible;
    res.value = v ? v->get_d() : 0.0;
    return res;
  }
  res.system = build_lifted(k, r, OpKind::NPlus, g);
  SdpProblem p = compile_sdp(res.system, c, eps);
  res.outcome = sdp_solve(p);
  res.status = res.outcome.status;
  res.value = res.outcome.value;
  return res;
}

/// Feasibility of the x0 = 1 slice of N+^r(K). Infeasible means a verified
/// phase-1 certificate with margin at least 1e-6.
inline NPlusResult nplus_feasible(const HCone& k, std::size_t r, const Guards& g = Guards::from_env(),
                                  double eps = sdp_eps_from_env()) {
  NPlusResult res;
  if (r == 0) {
    RVec e0(k.d() + 1);
    e0[0] = 1;
    res.status = slice_optimum(k, e0) ? SdpStatus::Optimal : SdpStatus::Infeasible;
    return res;
  }
  res.system = build_lifted(k, r, OpKind::NPlus, g);
  SdpProblem p = compile_sdp(res.system, RVec(k.d() + 1), eps);
  res.outcome = sdp_feasibility(p);
  res.status = res.outcome.status;
  res.value = res.outcome.value;
  return res;
}

/// Membership of x in N+^r(K): same system with the root fixed to x.
inline NPlusResult nplus_member(const HCone& k, std::size_t r, const RVec& x, const Guards& g = Guards::from_env(),
                                double eps = sdp_eps_from_env()) {
  if (x.size() != k.d() + 1) throw DimensionError("point must have d+1 entries");
  NPlusResult res;
  if (r == 0) {
    res.status = slice_member(k, x) ? SdpStatus::Optimal : SdpStatus::Infeasible;
    return res;
  }
  res.system = build_lifted(k, r, OpKind::NPlus, g);
  SdpProblem p = compile_sdp(res.system, RVec(k.d() + 1), eps);
  p.equalities.pop_back();  // x0 = 1
  for (std::size_t i = 0; i <= k.d(); ++i) {
    SparseRow e;
    e.terms.emplace_back(i, 1.0);
    e.constant = -x[i].get_d();
    p.equalities.push_back(std::move(e));
  }
  const double scale = std::max(1.0, std::abs(x[0].get_d()));
  p.variable_bound = scale;
  res.outcome = sdp_feasibility(p);
  res.status = res.outcome.status;
  return res;
}

// Certificates for a single application of N+.

struct MPlusCheck {
  bool valid = false;
  std::string violated;  // "symmetry", "diagonal", "column j", "psd"
  RVec witness;          // exact psd failure
  Rational witness_value;
  double min_eigenvalue = 0;  // float mode
};

/// Checks Y in M+(K): symmetric, diag(Y) = Y e0, Y e_i and Y (e0 - e_i) in K,
/// and Y PSD (exact LDL^T).
inline MPlusCheck verify_mplus(const HCone& k, const RMat& y) {
  const std::size_t n = k.d() + 1;
  if (y.rows() != n || y.cols() != n) throw DimensionError("verify_mplus: matrix must be (d+1)x(d+1)");
  MPlusCheck res;
  if (!y.symmetric()) {
    res.violated = "symmetry";
    return res;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (y(i, i) != y(i, 0)) {
      res.violated = "diagonal";
      return res;
    }
  for (std::size_t j = 1; j < n; ++j) {
    RVec col = y.column(j), rest = y.column(0);
    for (std::size_t i = 0; i < n; ++i) rest[i] -= col[i];
    if (!slice_member(k, col) || !slice_member(k, rest)) {
      res.violated = "column " + std::to_string(j);
      return res;
    }
  }
  auto psd = ldlt_psd_check(y);
  if (!psd.psd) {
    res.violated = "psd";
    res.witness = psd.witness;
    res.witness_value = psd.value;
    return res;
  }
  res.valid = true;
  return res;
}

/// Floating variant: tolerances tol on linear conditions, eigenvalue margin
/// -tol for PSD.
inline MPlusCheck verify_mplus(const HCone& k, const Mat& y, double tol = 1e-8) {
  const auto n = static_cast<Eigen::Index>(k.d() + 1);
  if (y.rows() != n || y.cols() != n) throw DimensionError("verify_mplus: matrix must be (d+1)x(d+1)");
  MPlusCheck res;
  const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
  if ((y - y.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    res.violated = "symmetry";
    return res;
  }
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(y(i, i) - y(i, 0)) > tol * scale) {
      res.violated = "diagonal";
      return res;
    }
  auto in_k = [&](const Vec& v) {
    for (const auto& a : k.rows()) {
      double s = 0;
      for (Eigen::Index i = 0; i < n; ++i) s += a[static_cast<std::size_t>(i)].get_d() * v[i];
      if (s < -tol * scale) return false;
    }
    return true;
  };
  for (Eigen::Index j = 1; j < n; ++j)
    if (!in_k(y.col(j)) || !in_k(y.col(0) - y.col(j))) {
      res.violated = "column " + std::to_string(j);
      return res;
    }
  Mat sym = 0.5 * (y + y.transpose());
  res.min_eigenvalue = min_eigenvalue(sym);
  if (res.min_eigenvalue < -tol * scale) {
    res.violated = "psd";
    return res;
  }
  res.valid = true;
  return res;
}

struct Thm42Result {
  bool ok = false;
  std::size_t failing = 0;  // coordinate whose replacement leaves P
  RMat y;
  MPlusCheck check;
};

/// If every fractional coordinate of x can be replaced by 0 and by 1 staying
/// in P, then Y(x) = (1,x)(1,x)^T + Diag(0, x - x^2) certifies x in N+(P).
inline Thm42Result thm42_certificate(const HCone& p, const RVec& x) {
  const std::size_t d = p.d();
  if (x.size() != d + 1) throw DimensionError("point must have d+1 entries");
  if (x[0] != 1) throw DomainError("point must lie in the x0 = 1 slice");
  if (!slice_member(p, x)) throw DomainError("point is not in P");
  Thm42Result res;
  for (std::size_t j = 1; j <= d; ++j) {
    if (sgn(x[j]) <= 0 || x[j] >= 1) continue;
    RVec lo = x, hi = x;
    lo[j] = 0;
    hi[j] = 1;
    if (!slice_member(p, lo) || !slice_member(p, hi)) {
      res.failing = j;
      return res;
    }
  }
  res.y = RMat::outer(x, x);
  for (std::size_t j = 1; j <= d; ++j) res.y(j, j) += x[j] - x[j] * x[j];
  res.check = verify_mplus(p, res.y);
  res.ok = res.check.valid;
  return res;
}

/// Every x with x^{(j)} in P for all j: each row with its j-th coefficient
/// dropped, for every j.
inline HCone corequal_set(const HCone& p) {
  const std::size_t d = p.d();
  std::vector<RVec> rows;
  for (const auto& a : p.rows())
    for (std::size_t j = 1; j <= d; ++j) {
      RVec b = a;
      b[j] = 0;
      rows.push_back(std::move(b));
    }
  return HCone(d, std::move(rows));
}

/// Image of K under the translation x -> x + x0 e_j.
inline HCone translate_unit(const HCone& k, std::size_t j) {
  std::vector<RVec> rows;
  for (const auto& a : k.rows()) {
    RVec b = a;
    b[0] -= a[j];
    rows.push_back(std::move(b));
  }
  return HCone(k.d(), std::move(rows));
}

/// (P cap {x_j = 0}) + e_j = P cap {x_j = 1} for every j.
inline bool corequal_hypothesis(const HCone& p) {
  for (std::size_t j = 1; j <= p.d(); ++j) {
    HCone low = translate_unit(face_restrict(p, {{j}, {}}), j);
    HCone high = face_restrict(p, {{}, {j}});
    if (!cone_include(low, high) || !cone_include(high, low)) return false;
  }
  return true;
}

struct RankCertify {
  bool certified = false;
  std::vector<std::size_t> failing;  // the index set I whose face leaves the inequality invalid
};

/// Sufficient condition for a^T x <= alpha x0 (a >= 0) to be valid for
/// N+^r(K): validity on K cap {x_i = x0, i in I} for every I within the
/// support with |I| = r, or |I| <= r-1 and sum_I a_i > alpha.
inline RankCertify thm36_rank_certify(const HCone& k, const RVec& a, const Rational& alpha, std::size_t r,
                                      const Guards& g = Guards::from_env()) {
  const std::size_t d = k.d();
  if (a.size() != d + 1) throw DimensionError("inequality must have d+1 entries");
  std::vector<std::size_t> support;
  for (std::size_t i = 1; i <= d; ++i) {
    if (sgn(a[i]) < 0) throw DomainError("thm36_rank_certify needs a >= 0 (flip first)");
    if (sgn(a[i]) > 0) support.push_back(i);
  }
  std::size_t count = 0;
  for (std::size_t s = 0; s <= r; ++s) count += binomial(support.size(), s);
  if (count > g.max_subsets) throw GuardExceeded("too many index sets for the rank certificate");
  RankCertify res;
  for (std::size_t s = 0; s <= std::min(r, support.size()); ++s) {
    for (const auto& pick : subsets(support.size(), s)) {
      std::vector<std::size_t> idx;
      Rational weight = 0;
      for (auto p : pick) {
        idx.push_back(support[p - 1]);
        weight += a[support[p - 1]];
      }
      if (s < r && weight <= alpha) continue;
      auto m = slice_optimum(face_restrict(k, {{}, idx}), a);
      if (m && *m > alpha) {
        res.failing = idx;
        return res;
      }
    }
  }
  res.certified = true;
  return res;
}

struct NPlusRank {
  std::optional<std::size_t> rank;  // nullopt: exceeds r_max
  std::vector<double> values;       // optimum per level tried
  SdpStatus status = SdpStatus::Optimal;  // first non-optimal status, if any
};

/// Smallest r <= r_max with max a^T x <= alpha + tol over the level-r slice
/// of N+. Stops at the first level the solver cannot decide.
inline NPlusRank nplus_inequality_rank(const HCone& k, const RVec& a, const Rational& alpha, std::size_t r_max,
                                       double tol = 1e-6, const Guards& g = Guards::from_env(),
                                       double eps = sdp_eps_from_env()) {
  NPlusRank res;
  for (std::size_t r = 0; r <= r_max; ++r) {
    NPlusResult v = nplus_optimize(k, r, a, g, eps);
    if (v.status == SdpStatus::Infeasible) {
      res.rank = r;
      return res;
    }
    if (v.status != SdpStatus::Optimal) {
      res.status = v.status;
      return res;
    }
    res.values.push_back(v.value);
    if (v.value <= alpha.get_d() + tol) {
      res.rank = r;
      return res;
    }
  }
  return res;
}

/// Sufficient PSD test for a symmetric matrix: every diagonal entry is at
/// least the absolute sum of the rest of its row.
inline bool diagonally_dominant(const RMat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational off = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (j != i) off += abs(m(i, j));
    if (m(i, i) < off) return false;
  }
  return true;
}

}  // namespace liftproj

#endif  // LIFTPROJ_LSPLUS_HPP_
