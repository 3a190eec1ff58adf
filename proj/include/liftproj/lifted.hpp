#ifndef LIFTPROJ_LIFTED_HPP_
#define LIFTPROJ_LIFTED_HPP_

// Nested lifted systems for the iterated operators N, N0 and N+.
//
// A node carries a vector v (linear forms in the LP variables) and a state per
// coordinate: free, fixed to zero, or fixed to one (v_i = v_0). Because
// N^r(K cap F) = N^r(K) cap F for faces F of Q, a node only needs matrix
// variables among its free coordinates: rows/columns of fixed-one indices
// repeat row/column 0 and those of fixed-zero indices vanish. Children exist
// for free j only: Y e_j (j fixed to one) and Y (e_0 - e_j) (j fixed to zero).
// A node with no depth left, or no free coordinate, constrains v to K.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "liftproj/cone.hpp"
#include "liftproj/lp.hpp"
#include "liftproj/rational.hpp"

namespace liftproj {

enum class OpKind { N, N0, NPlus };

inline std::string to_string(OpKind k) {
  switch (k) {
    case OpKind::N: return "n";
    case OpKind::N0: return "n0";
    case OpKind::NPlus: return "nplus";
  }
  return "?";
}

inline OpKind parse_op(const std::string& s) {
  if (s == "n") return OpKind::N;
  if (s == "n0") return OpKind::N0;
  if (s == "nplus") return OpKind::NPlus;
  throw ParseError("unknown operator '" + s + "' (expected n, n0 or nplus)");
}

/// Size limits for generated systems. Environment overrides:
/// LIFTPROJ_MAX_VARS, LIFTPROJ_MAX_ROWS.
struct Guards {
  std::size_t max_variables = 100000;
  std::size_t max_rows = 2000000;
  std::size_t max_subsets = 10000;  // C(d,r) 2^r for the partition relaxation

  static Guards from_env() {
    Guards g;
    auto read = [](const char* name, std::size_t& slot) {
      if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        unsigned long long x = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && x > 0) slot = static_cast<std::size_t>(x);
      }
    };
    read("LIFTPROJ_MAX_VARS", g.max_variables);
    read("LIFTPROJ_MAX_ROWS", g.max_rows);
    read("LIFTPROJ_MAX_SUBSETS", g.max_subsets);
    return g;
  }
};

/// Sparse linear form sum c_k z_k over LP variables.
class LinForm {
 public:
  LinForm() = default;
  static LinForm var(std::size_t i) {
    LinForm f;
    f.terms_.emplace_back(i, Rational(1));
    return f;
  }

  bool zero() const { return terms_.empty(); }
  const std::vector<std::pair<std::size_t, Rational>>& terms() const { return terms_; }

  LinForm& add(const LinForm& o, const Rational& scale = 1) {
    if (sgn(scale) == 0 || o.zero()) return *this;
    std::vector<std::pair<std::size_t, Rational>> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t a = 0, b = 0;
    while (a < terms_.size() || b < o.terms_.size()) {
      if (b == o.terms_.size() || (a < terms_.size() && terms_[a].first < o.terms_[b].first)) {
        out.push_back(terms_[a++]);
      } else if (a == terms_.size() || o.terms_[b].first < terms_[a].first) {
        out.emplace_back(o.terms_[b].first, o.terms_[b].second * scale);
        ++b;
      } else {
        Rational s = terms_[a].second + o.terms_[b].second * scale;
        if (sgn(s) != 0) out.emplace_back(terms_[a].first, std::move(s));
        ++a, ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }
  friend LinForm operator+(LinForm a, const LinForm& b) { return a.add(b); }
  friend LinForm operator-(LinForm a, const LinForm& b) { return a.add(b, -1); }

  template <typename T>
  T eval(const std::vector<T>& z) const {
    T s = 0;
    for (const auto& [i, c] : terms_) s += static_cast<T>(coef_as<T>(c)) * z[i];
    return s;
  }

  RVec dense(std::size_t n) const {
    RVec out(n);
    for (const auto& [i, c] : terms_) out[i] = c;
    return out;
  }

  bool operator==(const LinForm& o) const { return terms_ == o.terms_; }

 private:
  template <typename T>
  static T coef_as(const Rational& c) {
    if constexpr (std::is_same_v<T, double>) {
      return c.get_d();
    } else {
      return c;
    }
  }
  std::vector<std::pair<std::size_t, Rational>> terms_;
};

enum class Fix : std::int8_t { Free, Zero, One };

struct LiftedNode {
  long parent = -1;
  bool via_one = false;     // child Y e_j (true) or Y (e_0 - e_j) (false)
  std::size_t column = 0;   // j
  std::size_t level = 0;    // remaining depth r'
  std::vector<Fix> state;   // per coordinate 0..d (entry 0 unused)
  std::vector<LinForm> v;   // d+1 entries
  std::vector<LinForm> y;   // (d+1)^2 row-major; empty for leaves
  std::vector<std::size_t> reduced;  // 0 followed by the free coordinates
  bool leaf() const { return y.empty(); }
};

struct LiftedRow {
  LinForm form;
  Relation rel = Relation::Geq;  // form >= 0 or form = 0
};

/// Compiled nested system. Variables 0..d are the root vector x.
struct LiftedSystem {
  OpKind kind = OpKind::N;
  std::size_t d = 0;
  std::size_t depth = 0;
  std::size_t variables = 0;
  std::vector<LiftedNode> nodes;
  std::vector<LiftedRow> rows;
};

namespace detail {

class TreeBuilder {
 public:
  TreeBuilder(const HCone& k, OpKind kind, const Guards& g) : k_(k), kind_(kind), g_(g) {}

  LiftedSystem build(std::size_t r) {
    const std::size_t d = k_.d();
    sys_.kind = kind_;
    sys_.d = d;
    sys_.depth = r;
    sys_.variables = d + 1;
    std::vector<LinForm> root(d + 1);
    for (std::size_t i = 0; i <= d; ++i) root[i] = LinForm::var(i);
    std::vector<Fix> state(d + 1, Fix::Free);
    expand(-1, false, 0, r, std::move(state), std::move(root));
    return std::move(sys_);
  }

 private:
  std::size_t fresh() {
    if (sys_.variables >= g_.max_variables)
      throw GuardExceeded("lifted system exceeds " + std::to_string(g_.max_variables) + " scalar variables");
    return sys_.variables++;
  }

  void push_row(LinForm f, Relation rel) {
    if (f.zero()) return;
    if (sys_.rows.size() >= g_.max_rows)
      throw GuardExceeded("lifted system exceeds " + std::to_string(g_.max_rows) + " rows");
    sys_.rows.push_back({std::move(f), rel});
  }

  void expand(long parent, bool via_one, std::size_t column, std::size_t level, std::vector<Fix> state,
              std::vector<LinForm> v) {
    const std::size_t d = k_.d();
    const std::size_t id = sys_.nodes.size();
    std::vector<std::size_t> free;
    for (std::size_t i = 1; i <= d; ++i)
      if (state[i] == Fix::Free) free.push_back(i);

    LiftedNode node;
    node.parent = parent;
    node.via_one = via_one;
    node.column = column;
    node.level = level;
    node.state = state;
    node.v = v;

    if (level == 0 || free.empty()) {
      leaf_rows(state, v, free.empty());
      sys_.nodes.push_back(std::move(node));
      return;
    }

    // Matrix entries. src(i): 0 for index 0 and fixed-one, i for free, none
    // for fixed-zero.
    auto src = [&](std::size_t i) -> long {
      if (i == 0 || state[i] == Fix::One) return 0;
      if (state[i] == Fix::Zero) return -1;
      return static_cast<long>(i);
    };
    std::map<std::pair<long, long>, std::size_t> off;
    for (auto a : free)
      for (auto b : free) {
        if (a == b) continue;
        if (kind_ != OpKind::N0 && a > b) continue;
        off[{static_cast<long>(a), static_cast<long>(b)}] = fresh();
      }
    std::vector<LinForm> y((d + 1) * (d + 1));
    for (std::size_t a = 0; a <= d; ++a)
      for (std::size_t b = 0; b <= d; ++b) {
        long sa = src(a), sb = src(b);
        LinForm& e = y[a * (d + 1) + b];
        if (sa < 0 || sb < 0) continue;
        if (sa == 0 && sb == 0) {
          e = v[0];
        } else if (sa == 0) {
          e = v[sb];
        } else if (sb == 0 || sa == sb) {
          e = v[sa];
        } else {
          std::pair<long, long> key = kind_ == OpKind::N0 ? std::make_pair(sa, sb)
                                                          : std::make_pair(std::min(sa, sb), std::max(sa, sb));
          e = LinForm::var(off.at(key));
        }
      }
    node.y = y;
    node.reduced.push_back(0);
    node.reduced.insert(node.reduced.end(), free.begin(), free.end());
    sys_.nodes.push_back(std::move(node));

    for (auto j : free) {
      std::vector<LinForm> one(d + 1), zero(d + 1);
      for (std::size_t a = 0; a <= d; ++a) {
        one[a] = y[a * (d + 1) + j];
        zero[a] = y[a * (d + 1)] - y[a * (d + 1) + j];
      }
      auto s1 = state, s0 = state;
      s1[j] = Fix::One;
      s0[j] = Fix::Zero;
      expand(static_cast<long>(id), true, j, level - 1, std::move(s1), std::move(one));
      expand(static_cast<long>(id), false, j, level - 1, std::move(s0), std::move(zero));
    }
  }

  void leaf_rows(const std::vector<Fix>& state, const std::vector<LinForm>& v, bool all_fixed) {
    const std::size_t d = k_.d();
    if (all_fixed) {
      // v = v0 (1, p) for a 0-1 pattern p: v in K iff v0 >= 0, and v0 = 0
      // when (1, p) is cut off.
      RVec p(d + 1);
      p[0] = 1;
      for (std::size_t i = 1; i <= d; ++i) p[i] = state[i] == Fix::One ? 1 : 0;
      push_row(v[0], slice_member(k_, p) ? Relation::Geq : Relation::Eq);
      return;
    }
    for (const auto& a : k_.rows()) {
      LinForm f;
      for (std::size_t i = 0; i <= d; ++i)
        if (sgn(a[i]) != 0) f.add(v[i], a[i]);
      push_row(std::move(f), Relation::Geq);
    }
  }

  const HCone& k_;
  OpKind kind_;
  Guards g_;
  LiftedSystem sys_;
};

}  // namespace detail

/// Nested system whose projection onto variables 0..d is N^r(K) (N0^r, N+^r
/// for the other kinds; N+ additionally needs the PSD blocks of each node).
inline LiftedSystem build_lifted(const HCone& k, std::size_t r, OpKind kind, const Guards& g = Guards::from_env()) {
  return detail::TreeBuilder(k, kind, g).build(r);
}

/// Polyhedral part of the system as an exact LP (no objective).
inline LinearProgram compile_lp(const LiftedSystem& sys) {
  LinearProgram lp(sys.variables);
  for (const auto& row : sys.rows) lp.add(row.form.dense(sys.variables), row.rel, 0);
  return lp;
}

inline RVec pad(const RVec& c, std::size_t n) {
  RVec out(n);
  for (std::size_t i = 0; i < c.size() && i < n; ++i) out[i] = c[i];
  return out;
}

/// Adds root-level equalities x_i = 0 (J0) and x_i = x_0 (J1).
inline void add_face_rows(LinearProgram& lp, const FaceSpec& f) {
  for (auto i : f.zeros) {
    RVec a(lp.variables);
    a[i] = 1;
    lp.eq(std::move(a), 0);
  }
  for (auto i : f.ones) {
    RVec a(lp.variables);
    a[i] = 1;
    a[0] = -1;
    lp.eq(std::move(a), 0);
  }
}

/// max c^T x over the x0 = 1 slice of a compiled system; nullopt when empty.
inline std::optional<Rational> optimize_root(LinearProgram lp, const RVec& c, std::size_t d) {
  if (c.size() != d + 1) throw DimensionError("objective must have d+1 entries");
  RVec x0(lp.variables);
  x0[0] = 1;
  lp.eq(std::move(x0), 1);
  lp.objective = pad(c, lp.variables);
  lp.sense = Sense::Maximize;
  auto out = lp_solve(lp);
  if (out.status == LpStatus::Infeasible) return std::nullopt;
  if (out.status == LpStatus::Unbounded) throw Error("lifted LP unbounded; cone is not inside Q");
  return out.value;
}

/// Exact max of c^T x over the x0 = 1 slice of N^r(K) or N0^r(K).
inline std::optional<Rational> n_optimize(const HCone& k, std::size_t r, OpKind kind, const RVec& c,
                                          const Guards& g = Guards::from_env()) {
  if (kind == OpKind::NPlus) throw DomainError("n_optimize handles the polyhedral operators only");
  if (r == 0) return slice_optimum(k, c);
  return optimize_root(compile_lp(build_lifted(k, r, kind, g)), c, k.d());
}

/// Numeric values of every node, for certificates.
template <typename T>
struct CertNode {
  long parent = -1;
  bool via_one = false;
  std::size_t column = 0;
  std::size_t level = 0;
  std::vector<T> v;
  std::vector<T> y;  // (d+1)^2 row-major, empty for leaves
};

template <typename T>
struct LiftedCertificate {
  OpKind kind = OpKind::N;
  std::size_t d = 0;
  std::size_t depth = 0;
  std::vector<CertNode<T>> nodes;
};

template <typename T>
LiftedCertificate<T> evaluate_certificate(const LiftedSystem& sys, const std::vector<T>& z) {
  LiftedCertificate<T> cert;
  cert.kind = sys.kind;
  cert.d = sys.d;
  cert.depth = sys.depth;
  for (const auto& n : sys.nodes) {
    CertNode<T> c;
    c.parent = n.parent;
    c.via_one = n.via_one;
    c.column = n.column;
    c.level = n.level;
    for (const auto& f : n.v) c.v.push_back(f.template eval<T>(z));
    for (const auto& f : n.y) c.y.push_back(f.template eval<T>(z));
    cert.nodes.push_back(std::move(c));
  }
  return cert;
}

struct MemberResult {
  bool member = false;
  LiftedCertificate<Rational> certificate;  // when member
  RVec separator;                           // when not: a^T y >= 0 on the relaxation, a^T x < 0
};

/// Exact membership of x in N^r(K) / N0^r(K), with certificate or separating row.
inline MemberResult n_member(const HCone& k, std::size_t r, OpKind kind, const RVec& x,
                             const Guards& g = Guards::from_env()) {
  if (kind == OpKind::NPlus) throw DomainError("n_member handles the polyhedral operators only");
  const std::size_t d = k.d();
  if (x.size() != d + 1) throw DimensionError("point must have d+1 entries");
  LiftedSystem sys = build_lifted(k, r, kind, g);
  LinearProgram lp = compile_lp(sys);
  const std::size_t first = lp.rows.size();
  for (std::size_t i = 0; i <= d; ++i) {
    RVec a(lp.variables);
    a[i] = 1;
    lp.eq(std::move(a), x[i]);
  }
  auto out = lp_solve(lp);
  MemberResult res;
  if (out.status == LpStatus::Infeasible) {
    res.separator.resize(d + 1);
    for (std::size_t i = 0; i <= d; ++i) res.separator[i] = -out.dual[first + i];
    res.separator = primitive(res.separator);
    return res;
  }
  res.member = true;
  res.certificate = evaluate_certificate<Rational>(sys, out.primal);
  return res;
}

/// Subsets of {1..d} of size r in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t d, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == r) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i <= d; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t b = 1;
  for (std::size_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

namespace detail {

// Appends, for index set J, the partition decomposition x = sum_P z^P with
// z^P in K cap F_P; z blocks are new variables starting at lp.variables.
inline void add_partition_block(LinearProgram& lp, const HCone& k, const std::vector<std::size_t>& j) {
  const std::size_t d = k.d();
  const std::size_t parts = std::size_t{1} << j.size();
  const std::size_t start = lp.variables;
  lp.variables += parts * (d + 1);
  for (auto& row : lp.rows) row.a.resize(lp.variables);
  lp.objective.resize(lp.variables);
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t off = start + p * (d + 1);
    for (const auto& a : k.rows()) {
      RVec row(lp.variables);
      for (std::size_t i = 0; i <= d; ++i) row[off + i] = a[i];
      lp.geq(std::move(row), 0);
    }
    for (std::size_t t = 0; t < j.size(); ++t) {
      RVec row(lp.variables);
      row[off + j[t]] = 1;
      if (p >> t & 1u) row[off] = -1;  // x_j = x_0 on the J1 side
      lp.eq(std::move(row), 0);
    }
  }
  for (std::size_t i = 0; i <= d; ++i) {
    RVec row(lp.variables);
    row[i] = 1;
    for (std::size_t p = 0; p < parts; ++p) row[start + p * (d + 1) + i] = -1;
    lp.eq(std::move(row), 0);
  }
}

inline void check_partition_guard(std::size_t d, std::size_t r, const Guards& g) {
  if (r > d) throw DomainError("partition relaxation needs r <= d");
  if (r >= 63 || binomial(d, r) * (std::size_t{1} << r) > g.max_subsets)
    throw GuardExceeded("C(d,r) 2^r exceeds " + std::to_string(g.max_subsets));
}

}  // namespace detail

/// x lies in the partition relaxation: for every |J| = r, x is a sum over the
/// partitions (J0, J1) of J of points of K on the faces x_J0 = 0, x_J1 = x0.
inline bool ntilde0_member(const HCone& k, std::size_t r, const RVec& x, const Guards& g = Guards::from_env()) {
  const std::size_t d = k.d();
  if (x.size() != d + 1) throw DimensionError("point must have d+1 entries");
  detail::check_partition_guard(d, r, g);
  for (const auto& j : subsets(d, r)) {
    LinearProgram lp(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
      RVec a(d + 1);
      a[i] = 1;
      lp.eq(std::move(a), x[i]);
    }
    detail::add_partition_block(lp, k, j);
    if (lp_solve(lp).status == LpStatus::Infeasible) return false;
  }
  return true;
}

/// max c^T x over the x0 = 1 slice of the partition relaxation (all J jointly).
inline std::optional<Rational> ntilde0_optimize(const HCone& k, std::size_t r, const RVec& c,
                                                const Guards& g = Guards::from_env()) {
  const std::size_t d = k.d();
  if (c.size() != d + 1) throw DimensionError("objective must have d+1 entries");
  detail::check_partition_guard(d, r, g);
  LinearProgram lp(d + 1);
  for (const auto& a : k.rows()) lp.geq(a, 0);
  for (const auto& j : subsets(d, r)) detail::add_partition_block(lp, k, j);
  return optimize_root(std::move(lp), c, d);
}

struct RankResult {
  std::optional<std::size_t> rank;  // nullopt: exceeds r_max
  std::vector<std::optional<Rational>> values;  // optimum per level tried (inequality_rank)
};

/// Smallest r <= r_max with max a^T x <= alpha over the level-r slice.
inline RankResult inequality_rank(const HCone& k, const RVec& a, const Rational& alpha, OpKind kind,
                                  std::size_t r_max, const Guards& g = Guards::from_env()) {
  RankResult res;
  for (std::size_t r = 0; r <= r_max; ++r) {
    auto v = n_optimize(k, r, kind, a, g);
    res.values.push_back(v);
    if (!v || *v <= alpha) {
      res.rank = r;
      return res;
    }
  }
  return res;
}

/// Smallest r <= r_max at which every facet of the integral hull is valid for
/// the level-r relaxation (for an empty hull: at which the slice is empty).
inline RankResult cone_rank(const HCone& k, OpKind kind, std::size_t r_max, const Guards& g = Guards::from_env()) {
  if (k.d() > 12) throw GuardExceeded("cone_rank needs d <= 12");
  const HCone hull = integral_hull(k);
  const bool hull_empty = integer_points(k).empty();
  RankResult res;
  RVec e0(k.d() + 1);
  e0[0] = 1;
  for (std::size_t r = 0; r <= r_max; ++r) {
    LinearProgram lp = r == 0 ? LinearProgram(k.d() + 1) : compile_lp(build_lifted(k, r, kind, g));
    if (r == 0)
      for (const auto& a : k.rows()) lp.geq(a, 0);
    bool valid = true;
    if (hull_empty) {
      valid = !optimize_root(lp, e0, k.d()).has_value();
    } else {
      for (const auto& a : hull.rows()) {
        RVec neg(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
        auto m = optimize_root(lp, neg, k.d());  // max -a^T x = -min a^T x
        if (m && sgn(*m) > 0) {
          valid = false;
          break;
        }
      }
    }
    if (valid) {
      res.rank = r;
      return res;
    }
  }
  return res;
}

}  // namespace liftproj

#endif  // LIFTPROJ_LIFTED_HPP_
