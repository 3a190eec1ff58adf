#ifndef LIFTPROJ_EXACT_LINALG_HPP_
#define LIFTPROJ_EXACT_LINALG_HPP_

#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "liftproj/rational.hpp"

namespace liftproj {

struct PsdCheck {
  bool psd = false;
  RVec witness;    // empty when psd; otherwise u with u^T M u < 0
  Rational value;  // u^T M u for the witness
};

/// Exact positive-semidefiniteness test by symmetric pivoted LDL^T.
///
/// Each step works on the current Schur complement S:
///  - a negative diagonal entry S_kk yields the witness e_k,
///  - otherwise the largest positive diagonal entry is eliminated,
///  - if every diagonal entry is zero but some S_ij is not, the 2x2 block
///    [[0, b], [b, 0]] is indefinite and e_i - sign(b)/2 e_j gives -|b|,
///  - an all-zero complement means M is PSD.
/// Local witnesses are pulled back through the elimination, so the returned
/// vector satisfies u^T M u = (local value) exactly.
inline PsdCheck ldlt_psd_check(const RMat& m) {
  if (!m.square()) throw DimensionError("ldlt_psd_check: matrix is not square");
  if (!m.symmetric()) throw DimensionError("ldlt_psd_check: matrix is not symmetric");
  const std::size_t n = m.rows();
  RMat s = m;
  // Eliminated pivots in order, and the multipliers l(k, p) = S_kp / S_pp used
  // for each pivot p at the time it was eliminated.
  std::vector<std::size_t> pivots;
  std::vector<RVec> multipliers;
  std::vector<bool> active(n, true);

  auto pull_back = [&](RVec u) {
    // u is expressed in the coordinates of the current Schur complement
    // (entries on eliminated indices are zero). Undo eliminations in reverse:
    // the eliminated coordinate p must equal -sum_k l(k,p) u_k.
    for (std::size_t t = pivots.size(); t-- > 0;) {
      const std::size_t p = pivots[t];
      Rational acc = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (k != p && sgn(multipliers[t][k]) != 0 && sgn(u[k]) != 0) acc += multipliers[t][k] * u[k];
      u[p] = -acc;
    }
    return u;
  };

  for (;;) {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k]) continue;
      if (sgn(s(k, k)) < 0) {
        RVec u(n);
        u[k] = 1;
        PsdCheck out{false, pull_back(std::move(u)), 0};
        out.value = m.quadratic_form(out.witness);
        return out;
      }
      if (sgn(s(k, k)) > 0 && (!best || s(k, k) > s(*best, *best))) best = k;
    }
    if (!best) break;
    const std::size_t p = *best;
    RVec l(n);
    for (std::size_t k = 0; k < n; ++k)
      if (active[k] && k != p && sgn(s(k, p)) != 0) l[k] = s(k, p) / s(p, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || i == p || sgn(l[i]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!active[j] || j == p || sgn(s(p, j)) == 0) continue;
        s(i, j) -= l[i] * s(p, j);
      }
    }
    active[p] = false;
    pivots.push_back(p);
    multipliers.push_back(std::move(l));
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!active[j] || sgn(s(i, j)) == 0) continue;
      RVec u(n);
      u[i] = 1;
      u[j] = Rational(-sgn(s(i, j)), 2);
      PsdCheck out{false, pull_back(std::move(u)), 0};
      out.value = m.quadratic_form(out.witness);
      return out;
    }
  }
  return PsdCheck{true, {}, 0};
}

/// Reduced row echelon form in place, pivoting only among the first `cols`
/// columns (trailing columns ride along); returns the pivot columns.
inline std::vector<std::size_t> rref(std::vector<RVec>& rows, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && sgn(rows[sel][c]) == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Rational inv = 1 / rows[r][c];
    const std::size_t width = rows[r].size();
    for (std::size_t j = c; j < width; ++j)
      if (sgn(rows[r][j]) != 0) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = c; j < width; ++j)
        if (sgn(rows[r][j]) != 0) rows[i][j] -= f * rows[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivot_cols;
}

inline std::size_t rank_of(std::vector<RVec> rows, std::size_t cols) {
  return rref(rows, cols).size();
}

/// Basis of {x : R x = 0} for the given rows of width `cols`.
inline std::vector<RVec> nullspace(std::vector<RVec> rows, std::size_t cols) {
  auto pivots = rref(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RVec v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves the square system A x = b exactly; nullopt when A is singular.
inline std::optional<RVec> solve_square(const std::vector<RVec>& a, const RVec& b) {
  const std::size_t n = b.size();
  std::vector<RVec> aug(n, RVec(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw DimensionError("solve_square: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n] = b[i];
  }
  auto piv = rref(aug, n);
  if (piv.size() != n) return std::nullopt;
  RVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

}  // namespace liftproj

#endif  // LIFTPROJ_EXACT_LINALG_HPP_
