#ifndef LIFTPROJ_CONE_HPP_
#define LIFTPROJ_CONE_HPP_

// Homogenized polyhedral cones K in Q^{d+1} contained in the 0-1 cone Q.
// A row a means a^T x >= 0 on x = (x0, x1, ..., xd).

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "liftproj/double_description.hpp"
#include "liftproj/lp.hpp"
#include "liftproj/rational.hpp"

namespace liftproj {

inline bool lex_less(const RVec& a, const RVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Rational& x, const Rational& y) { return x < y; });
}

/// x_i >= 0 when upper is false, x0 - x_i >= 0 otherwise.
inline RVec box_row(std::size_t d, std::size_t i, bool upper) {
  RVec a(d + 1);
  a[i] = upper ? -1 : 1;
  if (upper) a[0] = 1;
  return a;
}

class HCone {
 public:
  HCone() = default;

  /// Normalizes every row to a primitive integer vector, drops zero rows,
  /// adds missing box rows, then sorts and deduplicates.
  HCone(std::size_t d, std::vector<RVec> rows) : d_(d) {
    for (auto& r : rows) {
      if (r.size() != d + 1) throw DimensionError("HCone: row width must be d+1");
      if (!is_zero(r)) rows_.push_back(primitive(r));
    }
    for (std::size_t i = 1; i <= d; ++i) {
      rows_.push_back(box_row(d, i, false));
      rows_.push_back(box_row(d, i, true));
    }
    std::sort(rows_.begin(), rows_.end(), lex_less);
    rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
  }

  static HCone empty(std::size_t d) {
    RVec r(d + 1);
    r[0] = -1;
    return HCone(d, {r});
  }

  std::size_t d() const { return d_; }
  const std::vector<RVec>& rows() const { return rows_; }

  bool is_box_row(const RVec& a) const {
    std::size_t nz = 0, idx = 0;
    for (std::size_t i = 1; i <= d_; ++i)
      if (sgn(a[i]) != 0) ++nz, idx = i;
    if (nz != 1) return false;
    return (sgn(a[0]) == 0 && a[idx] == 1) || (a[0] == 1 && a[idx] == -1);
  }

  /// Rows other than the box rows.
  std::vector<RVec> extra_rows() const {
    std::vector<RVec> out;
    for (const auto& r : rows_)
      if (!is_box_row(r)) out.push_back(r);
    return out;
  }

  bool operator==(const HCone& o) const { return d_ == o.d_ && rows_ == o.rows_; }

 private:
  std::size_t d_ = 0;
  std::vector<RVec> rows_;
};

/// Index sets J0 (x_i = 0) and J1 (x_i = x0), indices in 1..d.
struct FaceSpec {
  std::vector<std::size_t> zeros;
  std::vector<std::size_t> ones;
};

/// P = {x : A x <= b} becomes rows b_k x0 - A_k x >= 0.
inline HCone homogenize(const std::vector<RVec>& a, const RVec& b, std::size_t d) {
  if (a.size() != b.size()) throw DimensionError("homogenize: |A| != |b|");
  std::vector<RVec> rows;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].size() != d) throw DimensionError("homogenize: row width must be d");
    RVec r(d + 1);
    r[0] = b[k];
    for (std::size_t i = 0; i < d; ++i) r[i + 1] = -a[k][i];
    rows.push_back(std::move(r));
  }
  return HCone(d, std::move(rows));
}

inline void check_index(std::size_t d, std::size_t i) {
  if (i < 1 || i > d) throw DimensionError("index " + std::to_string(i) + " outside 1..d");
}

/// K intersected with the face F of Q. Overlapping J0 and J1 force x0 = 0.
inline HCone face_restrict(const HCone& k, const FaceSpec& f) {
  const std::size_t d = k.d();
  std::vector<RVec> rows = k.rows();
  for (auto i : f.zeros) {
    check_index(d, i);
    RVec r(d + 1);
    r[i] = -1;
    rows.push_back(std::move(r));
  }
  for (auto i : f.ones) {
    check_index(d, i);
    RVec r(d + 1);
    r[i] = 1;
    r[0] = -1;
    rows.push_back(std::move(r));
  }
  return HCone(d, std::move(rows));
}

/// Image of K under x_i -> x0 - x_i (i in S) followed by y_{perm[i]} = x_i.
/// perm is indexed 1..d (perm[0] ignored); an empty perm means identity.
inline HCone flip(const HCone& k, const std::vector<std::size_t>& s, std::vector<std::size_t> perm = {}) {
  const std::size_t d = k.d();
  if (perm.empty()) {
    perm.resize(d + 1);
    for (std::size_t i = 0; i <= d; ++i) perm[i] = i;
  }
  if (perm.size() != d + 1) throw DimensionError("flip: permutation must have d+1 entries");
  std::vector<bool> in_s(d + 1, false), seen(d + 1, false);
  for (auto i : s) {
    check_index(d, i);
    in_s[i] = true;
  }
  for (std::size_t i = 1; i <= d; ++i) {
    check_index(d, perm[i]);
    if (seen[perm[i]]) throw DimensionError("flip: perm is not a permutation");
    seen[perm[i]] = true;
  }
  std::vector<RVec> rows;
  for (const auto& a : k.rows()) {
    // x = F y with x_i = y0 - y_i on S; the row a^T x >= 0 becomes (F^T a)^T y.
    RVec b = a;
    for (std::size_t i = 1; i <= d; ++i) {
      if (!in_s[i]) continue;
      b[0] += a[i];
      b[i] = -a[i];
    }
    RVec c(d + 1);
    c[0] = b[0];
    for (std::size_t i = 1; i <= d; ++i) c[perm[i]] = b[i];
    rows.push_back(std::move(c));
  }
  return HCone(d, std::move(rows));
}

/// The point map matching flip: y = image of x.
inline RVec flip_point(const RVec& x, const std::vector<std::size_t>& s, std::vector<std::size_t> perm = {}) {
  const std::size_t d = x.size() - 1;
  if (perm.empty()) {
    perm.resize(d + 1);
    for (std::size_t i = 0; i <= d; ++i) perm[i] = i;
  }
  RVec b = x;
  for (auto i : s) b[i] = x[0] - x[i];
  RVec y(d + 1);
  y[0] = b[0];
  for (std::size_t i = 1; i <= d; ++i) y[perm[i]] = b[i];
  return y;
}

inline bool slice_member(const HCone& k, const RVec& x) {
  if (x.size() != k.d() + 1) throw DimensionError("slice_member: point must have d+1 entries");
  for (const auto& a : k.rows())
    if (sgn(dot(a, x)) < 0) return false;
  return true;
}

/// LP over the x0 = 1 slice of K: variables x1..xd.
inline LinearProgram slice_lp(const HCone& k) {
  const std::size_t d = k.d();
  LinearProgram lp(d);
  for (const auto& a : k.rows()) lp.geq(RVec(a.begin() + 1, a.end()), -a[0]);
  return lp;
}

/// max (or min) of c^T (1, x) over the slice; nullopt when the slice is empty.
inline std::optional<Rational> slice_optimum(const HCone& k, const RVec& c, Sense sense = Sense::Maximize) {
  if (c.size() != k.d() + 1) throw DimensionError("slice_optimum: objective must have d+1 entries");
  LinearProgram lp = slice_lp(k);
  lp.objective.assign(c.begin() + 1, c.end());
  lp.sense = sense;
  auto out = lp_solve(lp);
  if (out.status == LpStatus::Infeasible) return std::nullopt;
  if (out.status != LpStatus::Optimal) throw Error("slice_optimum: unbounded over a bounded slice");
  return out.value + c[0];
}

/// K1 is contained in K2.
inline bool cone_include(const HCone& k1, const HCone& k2) {
  if (k1.d() != k2.d()) throw DimensionError("cone_include: dimension mismatch");
  for (const auto& a : k2.rows()) {
    auto m = slice_optimum(k1, a, Sense::Minimize);
    if (!m) return true;  // K1 = {0}
    if (sgn(*m) < 0) return false;
  }
  return true;
}

inline bool cone_equal(const HCone& k1, const HCone& k2) { return cone_include(k1, k2) && cone_include(k2, k1); }

/// All 0-1 points (1, p) of the slice, in binary counting order.
inline std::vector<RVec> integer_points(const HCone& k) {
  const std::size_t d = k.d();
  if (d > 12) throw GuardExceeded("integer point enumeration needs d <= 12");
  std::vector<RVec> pts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    RVec x(d + 1);
    x[0] = 1;
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1u) x[i + 1] = 1;
    if (slice_member(k, x)) pts.push_back(std::move(x));
  }
  return pts;
}

/// Facet description of the cone generated by the 0-1 points of K.
inline HCone integral_hull(const HCone& k) {
  const std::size_t d = k.d();
  auto pts = integer_points(k);
  if (pts.empty()) return HCone::empty(d);
  auto gens = dd_rays(pts, d + 1);
  std::vector<RVec> rows = gens.rays;
  for (const auto& l : gens.lineality) {
    rows.push_back(l);
    RVec neg(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
    rows.push_back(std::move(neg));
  }
  return HCone(d, std::move(rows));
}

// Instance generators.

inline HCone gen_box(std::size_t d) { return HCone(d, {}); }

/// x(S) <= (d/2) x0 for every |S| = d/2 + 1.
inline HCone gen_example2(std::size_t d) {
  if (d < 2 || d % 2) throw DomainError("example2 needs an even d >= 2");
  if (d > 20) throw GuardExceeded("example2 generator limited to d <= 20");
  std::vector<RVec> rows;
  const std::size_t size = d / 2 + 1;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != size) continue;
    RVec r(d + 1);
    r[0] = static_cast<long>(d / 2);
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1u) r[i + 1] = -1;
    rows.push_back(std::move(r));
  }
  return HCone(d, std::move(rows));
}

/// ||x - e/2||_1 <= p/2, one row per sign vector.
inline HCone gen_cross(std::size_t d, long p) {
  if (d < 1 || d > 16) throw DomainError("cross needs 1 <= d <= 16");
  if (p <= 0 || p > static_cast<long>(d)) throw DomainError("cross needs 0 < p <= d");
  std::vector<RVec> rows;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    RVec r(d + 1);
    long sum = 0;
    for (std::size_t i = 0; i < d; ++i) {
      long s = (mask >> i & 1u) ? -1 : 1;
      sum += s;
      r[i + 1] = -s;
    }
    r[0] = frac(p + sum, 2);
    rows.push_back(std::move(r));
  }
  return HCone(d, std::move(rows));
}

using Edge = std::pair<std::size_t, std::size_t>;

/// Fractional stable set relaxation: x_i + x_j <= x0 per edge, vertices 1..d.
inline HCone gen_frac(std::size_t d, const std::vector<Edge>& edges) {
  std::vector<RVec> rows;
  for (auto [i, j] : edges) {
    check_index(d, i);
    check_index(d, j);
    if (i == j) throw DomainError("frac: self loop");
    RVec r(d + 1);
    r[0] = 1;
    r[i] = r[j] = -1;
    rows.push_back(std::move(r));
  }
  return HCone(d, std::move(rows));
}

inline std::vector<Edge> complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) e.emplace_back(i, j);
  return e;
}

inline std::vector<Edge> cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= n; ++i) e.emplace_back(i, i % n + 1);
  return e;
}

/// Coordinate (1-based) of edge {u, v} of K_n in the matching cone, with
/// edges ordered (1,2), (1,3), ..., (n-1,n).
inline std::size_t matching_edge_index(std::size_t n, std::size_t u, std::size_t v) {
  if (u > v) std::swap(u, v);
  if (u < 1 || v > n || u == v) throw DomainError("matching: bad edge");
  std::size_t idx = 0;
  for (std::size_t a = 1; a < u; ++a) idx += n - a;
  return idx + (v - u);
}

/// Degree constraints x(delta(v)) <= x0 on the complete graph K_n.
inline HCone gen_matching(std::size_t n) {
  if (n < 2 || n > 8) throw DomainError("matching needs 2 <= n <= 8");
  const std::size_t d = n * (n - 1) / 2;
  std::vector<RVec> rows;
  for (std::size_t v = 1; v <= n; ++v) {
    RVec r(d + 1);
    r[0] = 1;
    for (std::size_t u = 1; u <= n; ++u)
      if (u != v) r[matching_edge_index(n, u, v)] = -1;
    rows.push_back(std::move(r));
  }
  return HCone(d, std::move(rows));
}

// Cone file format: `d <int>`, `m <int>`, then m rows of d+1 rationals.

inline std::string write_cone(const HCone& k) {
  std::ostringstream os;
  os << "d " << k.d() << "\nm " << k.rows().size() << "\n";
  for (const auto& r : k.rows()) os << render(r) << "\n";
  return os.str();
}

inline HCone read_cone(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  auto header = [&](std::size_t at, const char* key) -> std::size_t {
    if (at >= lines.size()) throw ParseError(std::string("cone file: missing '") + key + "' line");
    std::istringstream ls(lines[at]);
    std::string k;
    long v = -1;
    if (!(ls >> k >> v) || k != key || v < 0) throw ParseError(std::string("cone file: bad '") + key + "' line");
    return static_cast<std::size_t>(v);
  };
  const std::size_t d = header(0, "d"), m = header(1, "m");
  if (lines.size() != m + 2) throw ParseError("cone file: expected " + std::to_string(m) + " rows");
  std::vector<RVec> rows;
  for (std::size_t i = 0; i < m; ++i) {
    std::istringstream ls(lines[i + 2]);
    std::string tok;
    RVec r;
    while (ls >> tok) r.push_back(parse_rational(tok));
    if (r.size() != d + 1) throw ParseError("cone file: row " + std::to_string(i + 1) + " needs d+1 entries");
    rows.push_back(primitive(r));
  }
  for (std::size_t i = 1; i <= d; ++i)
    for (bool upper : {false, true})
      if (std::find(rows.begin(), rows.end(), box_row(d, i, upper)) == rows.end())
        throw ParseError("cone file: box row for x" + std::to_string(i) + " missing");
  return HCone(d, std::move(rows));
}

}  // namespace liftproj

#endif  // LIFTPROJ_CONE_HPP_
