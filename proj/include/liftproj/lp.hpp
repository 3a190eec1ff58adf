#ifndef LIFTPROJ_LP_HPP_
#define LIFTPROJ_LP_HPP_

// Exact rational linear programming over free variables.
//
// The primal  opt c^T x  s.t.  a_i^T x >= b_i  (or = b_i)  is solved through
// its dual in standard form  A^T y = c, y >= 0,  whose tableau has one row per
// primal variable. Lifted systems have few variables and many rows, so this
// keeps the tableau short.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liftproj/rational.hpp"

namespace liftproj {

enum class Relation { Geq, Eq };
enum class Sense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

inline std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

struct LpRow {
  RVec a;
  Relation rel = Relation::Geq;
  Rational rhs;
};

struct LinearProgram {
  std::size_t variables = 0;
  std::vector<LpRow> rows;
  RVec objective;  // empty means zero objective (pure feasibility)
  Sense sense = Sense::Maximize;

  explicit LinearProgram(std::size_t n = 0) : variables(n), objective(n) {}

  void add(RVec a, Relation rel, Rational rhs) {
    if (a.size() != variables) throw DimensionError("LinearProgram: row width mismatch");
    rows.push_back({std::move(a), rel, std::move(rhs)});
  }
  void geq(RVec a, Rational rhs) { add(std::move(a), Relation::Geq, std::move(rhs)); }
  void eq(RVec a, Rational rhs) { add(std::move(a), Relation::Eq, std::move(rhs)); }
};

/// Outcome of lp_solve.
///  - Optimal: `primal` optimal, `value` = c^T x, `dual` y with
///    sum y_i a_i = c (Minimize) or -c (Maximize), sum y_i b_i = +-value,
///    y_i >= 0 on inequality rows.
///  - Infeasible: `dual` is a Farkas vector: sum y_i a_i = 0, sum y_i b_i > 0,
///    y_i >= 0 on inequality rows.
///  - Unbounded: `primal` is a feasible point.
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  RVec primal;
  Rational value;
  RVec dual;
  std::size_t pivots = 0;
};

namespace detail {

struct RowKey {
  const RVec* a;
  Relation rel;
  const Rational* rhs;
  bool operator<(const RowKey& o) const {
    if (rel != o.rel) return rel < o.rel;
    for (std::size_t i = 0; i < a->size(); ++i) {
      int c = cmp((*a)[i], (*o.a)[i]);
      if (c) return c < 0;
    }
    return *rhs < *o.rhs;
  }
};

// Dense tableau for  min cost^T y  s.t.  T y = rhs, y >= 0,  with an identity
// block of artificial columns after the structural ones.
class DualTableau {
 public:
  DualTableau(std::vector<RVec> cols, RVec rhs, const RVec& cost)
      : n_(rhs.size()), m_(cols.size()), width_(m_ + n_), t_(n_, RVec(width_)), rhs_(std::move(rhs)),
        flip_(n_, 1), basis_(n_), cost_(width_) {
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (sgn(cols[j][k]) != 0) t_[k][j] = cols[j][k];
    for (std::size_t k = 0; k < n_; ++k) {
      if (sgn(rhs_[k]) < 0) {
        flip_[k] = -1;
        rhs_[k] = -rhs_[k];
        for (std::size_t j = 0; j < m_; ++j)
          if (sgn(t_[k][j]) != 0) t_[k][j] = -t_[k][j];
      }
      t_[k][m_ + k] = 1;
      basis_[k] = m_ + k;
    }
    for (std::size_t j = 0; j < m_; ++j) cost_[j] = cost[j];
  }

  std::size_t pivots() const { return pivots_; }

  /// Phase 1; returns false when T y = rhs, y >= 0 has no solution.
  bool phase1() {
    red_.assign(width_, Rational(0));
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (sgn(t_[k][j]) != 0) red_[j] -= t_[k][j];
    obj_ = 0;
    for (const auto& v : rhs_) obj_ -= v;
    if (!iterate()) throw Error("lp: phase 1 reported unbounded");
    if (sgn(obj_) != 0) return false;
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t k = 0; k < n_; ++k) {
      if (basis_[k] < m_) continue;
      for (std::size_t j = 0; j < m_; ++j) {
        if (sgn(t_[k][j]) != 0) {
          pivot(k, j);
          break;
        }
      }
    }
    return true;
  }

  /// Phase 2; returns the entering column of an unbounded ray, if any.
  std::optional<std::size_t> phase2() {
    red_ = cost_;
    obj_ = 0;
    for (std::size_t k = 0; k < n_; ++k) {
      const Rational& cb = cost_[basis_[k]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < width_; ++j)
        if (sgn(t_[k][j]) != 0) red_[j] -= cb * t_[k][j];
      obj_ -= cb * rhs_[k];
    }
    std::optional<std::size_t> ray;
    if (!iterate(&ray)) return ray;
    return std::nullopt;
  }

  RVec solution() const {
    RVec y(m_);
    for (std::size_t k = 0; k < n_; ++k)
      if (basis_[k] < m_) y[basis_[k]] = rhs_[k];
    return y;
  }

  RVec ray(std::size_t q) const {
    RVec y(m_);
    y[q] = 1;
    for (std::size_t k = 0; k < n_; ++k)
      if (basis_[k] < m_ && sgn(t_[k][q]) != 0) y[basis_[k]] = -t_[k][q];
    return y;
  }

  /// Simplex multipliers of the original (unflipped) equality rows.
  RVec multipliers() const {
    RVec pi(n_);
    for (std::size_t k = 0; k < n_; ++k) pi[k] = -red_[m_ + k] * flip_[k];
    return pi;
  }

 private:
  // Bland's rule: lowest-index entering column with negative reduced cost,
  // lowest-index basic variable among ratio ties. Artificials never enter.
  bool iterate(std::optional<std::size_t>* ray = nullptr) {
    for (;;) {
      std::optional<std::size_t> q;
      for (std::size_t j = 0; j < m_; ++j) {
        if (sgn(red_[j]) < 0) {
          q = j;
          break;
        }
      }
      if (!q) return true;
      std::optional<std::size_t> p;
      Rational best;
      for (std::size_t k = 0; k < n_; ++k) {
        if (sgn(t_[k][*q]) <= 0) continue;
        Rational ratio = rhs_[k] / t_[k][*q];
        if (!p || ratio < best || (ratio == best && basis_[k] < basis_[*p])) {
          p = k;
          best = std::move(ratio);
        }
      }
      if (!p) {
        if (ray) *ray = q;
        return false;
      }
      pivot(*p, *q);
    }
  }

  void pivot(std::size_t p, std::size_t q) {
    ++pivots_;
    const Rational inv = 1 / t_[p][q];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < width_; ++j) {
      if (sgn(t_[p][j]) == 0) continue;
      t_[p][j] *= inv;
      nz.push_back(j);
    }
    rhs_[p] *= inv;
    auto eliminate = [&](RVec& row, Rational& value) {
      if (sgn(row[q]) == 0) return;
      const Rational f = row[q];
      for (std::size_t j : nz) row[j] -= f * t_[p][j];
      if (sgn(rhs_[p]) != 0) value -= f * rhs_[p];
    };
    for (std::size_t k = 0; k < n_; ++k)
      if (k != p) eliminate(t_[k], rhs_[k]);
    eliminate(red_, obj_);
    basis_[p] = q;
  }

  std::size_t n_, m_, width_;
  std::vector<RVec> t_;
  RVec rhs_;
  std::vector<int> flip_;
  std::vector<std::size_t> basis_;
  RVec cost_;
  RVec red_;
  Rational obj_;  // negative of the current objective value
  std::size_t pivots_ = 0;
};

}  // namespace detail

/// Checks an outcome against the program exactly; returns an empty string when
/// every certificate holds, else a description of the first failure.
inline std::string check_outcome(const LinearProgram& lp, const LpOutcome& out) {
  const std::size_t n = lp.variables;
  RVec c = lp.objective.empty() ? RVec(n) : lp.objective;
  auto feasible = [&](const RVec& x) -> std::string {
    if (x.size() != n) return "primal has wrong length";
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      Rational lhs = dot(lp.rows[i].a, x);
      if (lp.rows[i].rel == Relation::Eq ? lhs != lp.rows[i].rhs : lhs < lp.rows[i].rhs)
        return "primal violates row " + std::to_string(i);
    }
    return {};
  };
  auto combine = [&](const RVec& y, RVec& sum_a, Rational& sum_b) -> std::string {
    if (y.size() != lp.rows.size()) return "dual has wrong length";
    sum_a.assign(n, Rational(0));
    sum_b = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (sgn(y[i]) == 0) continue;
      if (lp.rows[i].rel == Relation::Geq && sgn(y[i]) < 0) return "negative multiplier on row " + std::to_string(i);
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(lp.rows[i].a[j]) != 0) sum_a[j] += y[i] * lp.rows[i].a[j];
      sum_b += y[i] * lp.rows[i].rhs;
    }
    return {};
  };
  RVec sa;
  Rational sb;
  switch (out.status) {
    case LpStatus::Optimal: {
      if (auto e = feasible(out.primal); !e.empty()) return e;
      if (dot(c, out.primal) != out.value) return "value does not match primal";
      if (auto e = combine(out.dual, sa, sb); !e.empty()) return e;
      const int s = lp.sense == Sense::Minimize ? 1 : -1;
      for (std::size_t j = 0; j < n; ++j)
        if (sa[j] != s * c[j]) return "dual does not reproduce objective";
      if (sb != s * out.value) return "duality gap";
      return {};
    }
    case LpStatus::Infeasible: {
      if (auto e = combine(out.dual, sa, sb); !e.empty()) return e;
      if (!is_zero(sa) || sgn(sb) <= 0) return "Farkas vector does not certify";
      return {};
    }
    case LpStatus::Unbounded:
      return feasible(out.primal);
  }
  return "unknown status";
}

/// Exact two-phase simplex with Bland's rule. Exact duplicate rows (after
/// positive rescaling to a primitive integer row) are merged first; each
/// returned certificate is checked before return.
inline LpOutcome lp_solve(const LinearProgram& lp) {
  const std::size_t n = lp.variables;
  const RVec c = lp.objective.empty() ? RVec(n) : lp.objective;
  if (c.size() != n) throw DimensionError("lp_solve: objective width mismatch");

  // Presolve: normalize rows, drop trivially satisfied zero rows, merge
  // duplicates. kept[u] = (original index, scale) with a_u = scale * a_orig.
  std::vector<LpRow> rows;
  std::vector<std::pair<std::size_t, Rational>> kept;
  {
    std::vector<LpRow> normalized(lp.rows.size());
    std::vector<Rational> scale(lp.rows.size());
    std::vector<bool> drop(lp.rows.size(), false);
    std::map<detail::RowKey, std::size_t> seen;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      const auto& r = lp.rows[i];
      if (r.a.size() != n) throw DimensionError("lp_solve: row width mismatch");
      if (is_zero(r.a) && (r.rel == Relation::Geq ? sgn(r.rhs) <= 0 : sgn(r.rhs) == 0)) {
        drop[i] = true;
        continue;
      }
      Rational s = 1;
      if (!is_zero(r.a)) {
        RVec p = primitive(r.a);
        std::size_t f = 0;
        while (sgn(r.a[f]) == 0) ++f;
        s = p[f] / r.a[f];
        if (r.rel == Relation::Eq && sgn(p[f]) < 0) s = -s;
      } else {
        s = 1 / abs(r.rhs);  // infeasible zero row, normalized to 0 >= 1 or 0 = +-1
      }
      normalized[i].a.resize(n);
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(r.a[j]) != 0) normalized[i].a[j] = r.a[j] * s;
      normalized[i].rel = r.rel;
      normalized[i].rhs = r.rhs * s;
      scale[i] = s;
    }
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      if (drop[i]) continue;
      detail::RowKey key{&normalized[i].a, normalized[i].rel, &normalized[i].rhs};
      if (seen.count(key)) continue;
      seen.emplace(key, i);
      kept.emplace_back(i, scale[i]);
      rows.push_back(normalized[i]);
    }
  }

  // Dual columns: a_i for every row, plus -a_i for equality rows.
  std::vector<RVec> cols;
  RVec dual_cost;
  std::vector<std::pair<std::size_t, int>> col_row;
  for (std::size_t u = 0; u < rows.size(); ++u) {
    cols.push_back(rows[u].a);
    dual_cost.push_back(-rows[u].rhs);
    col_row.emplace_back(u, 1);
    if (rows[u].rel == Relation::Eq) {
      RVec neg(n);
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(rows[u].a[j]) != 0) neg[j] = -rows[u].a[j];
      cols.push_back(std::move(neg));
      dual_cost.push_back(rows[u].rhs);
      col_row.emplace_back(u, -1);
    }
  }
  auto to_row_multipliers = [&](const RVec& y) {
    RVec out(lp.rows.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (sgn(y[j]) == 0) continue;
      auto [u, s] = col_row[j];
      out[kept[u].first] += kept[u].second * y[j] * s;
    }
    return out;
  };

  const int s = lp.sense == Sense::Minimize ? 1 : -1;
  RVec target(n);
  for (std::size_t j = 0; j < n; ++j) target[j] = s * c[j];

  LpOutcome out;
  std::size_t pivots = 0;
  auto attempt = [&](const RVec& rhs, LpOutcome& result) -> bool {
    detail::DualTableau tab(cols, rhs, dual_cost);
    bool feasible = tab.phase1();
    if (feasible) {
      if (auto q = tab.phase2()) {
        result.status = LpStatus::Infeasible;
        result.dual = to_row_multipliers(tab.ray(*q));
      } else {
        result.status = LpStatus::Optimal;
        RVec pi = tab.multipliers();
        result.primal.assign(n, Rational(0));
        for (std::size_t j = 0; j < n; ++j) result.primal[j] = -pi[j];
        result.dual = to_row_multipliers(tab.solution());
      }
    }
    pivots += tab.pivots();
    return feasible;
  };

  if (attempt(target, out)) {
    if (out.status == LpStatus::Optimal) out.value = dot(c, out.primal);
  } else {
    // Dual infeasible: the primal is either unbounded or infeasible.
    LpOutcome probe;
    if (!attempt(RVec(n), probe)) throw Error("lp_solve: feasibility probe failed");
    if (probe.status == LpStatus::Infeasible) {
      out = std::move(probe);
    } else {
      out.status = LpStatus::Unbounded;
      out.primal = std::move(probe.primal);
      out.dual.clear();
    }
  }
  out.pivots = pivots;
  if (auto e = check_outcome(lp, out); !e.empty()) throw Error("lp_solve: certificate check failed: " + e);
  return out;
}

}  // namespace liftproj

#endif  // LIFTPROJ_LP_HPP_
