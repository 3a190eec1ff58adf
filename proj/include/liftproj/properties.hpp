#ifndef LIFTPROJ_PROPERTIES_HPP_
#define LIFTPROJ_PROPERTIES_HPP_

// Seeded random-instance suites for the operator invariants. Each suite
// reports how many instances it ran and every violation it saw.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "liftproj/cone.hpp"
#include "liftproj/exact_linalg.hpp"
#include "liftproj/lifted.hpp"
#include "liftproj/lsplus.hpp"

namespace liftproj {

struct PropertyReport {
  std::string name;
  std::size_t instances = 0;
  std::size_t skipped = 0;     // draws rejected before the check (empty slices and the like)
  std::size_t nontrivial = 0;  // instances where the compared quantity is not forced by K alone
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

class PropRng {
 public:
  explicit PropRng(std::uint64_t seed) : gen_(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(uniform(static_cast<long>(lo), static_cast<long>(hi)));
  }

 private:
  std::mt19937_64 gen_;
};

/// Cone with d linearly independent rows n_k^T (x - p x0) >= 0 through a
/// random point p strictly inside the box, so p is a vertex of the slice off
/// every facet x_i = 0, x_i = 1. `direction` receives the sum of the n_k,
/// which is minimized over the slice exactly at p.
inline HCone random_interior_vertex_cone(PropRng& g, std::size_t d, RVec* direction = nullptr) {
  static const Rational grid[] = {frac(1, 3), frac(1, 2), frac(2, 3)};
  RVec p(d + 1);
  p[0] = 1;
  for (std::size_t i = 1; i <= d; ++i) p[i] = grid[g.index(0, 2)];
  std::vector<RVec> normals;
  do {
    normals.clear();
    for (std::size_t k = 0; k < d; ++k) {
      RVec n(d + 1);
      for (std::size_t i = 1; i <= d; ++i) n[i] = g.uniform(-3, 3);
      normals.push_back(std::move(n));
    }
  } while (rank_of(normals, d + 1) < d);
  std::vector<RVec> rows;
  RVec sum(d + 1);
  for (auto& n : normals) {
    n[0] = -dot(n, p);
    for (std::size_t i = 0; i <= d; ++i) sum[i] += n[i];
    rows.push_back(n);
  }
  if (direction) {
    *direction = sum;
    (*direction)[0] = 0;
  }
  return HCone(d, std::move(rows));
}

/// Random cone in dimension d. A third of the draws plant an interior vertex;
/// the rest have 2..4 extra rows. About a third are
/// general rows a0 x0 + a^T x >= 0 with coefficients in [-3, 3]; the rest cut
/// a random 0-1 vertex v by its l1 distance: sum |x_i - v_i x0| >= x0 / 2.
inline HCone random_cone(PropRng& g, std::size_t d) {
  if (g.uniform(0, 2) == 0) return random_interior_vertex_cone(g, d);
  const std::size_t m = g.index(2, 4);
  std::vector<RVec> rows;
  for (std::size_t k = 0; k < m; ++k) {
    RVec a(d + 1);
    if (g.uniform(0, 2) > 0) {
      a[0] = -1;
      for (std::size_t i = 1; i <= d; ++i) {
        if (g.coin()) {
          a[i] = 2;
        } else {
          a[i] = -2;
          a[0] += 2;
        }
      }
      rows.push_back(std::move(a));
      continue;
    }
    long neg = 0;
    for (std::size_t i = 1; i <= d; ++i) {
      a[i] = g.uniform(-3, 3);
      if (sgn(a[i]) < 0) neg -= a[i].get_num().get_si();
    }
    a[0] = g.uniform(0, std::max(1L, neg));
    rows.push_back(std::move(a));
  }
  return HCone(d, std::move(rows));
}

/// Lower comprehensive polytope: rows b x0 - a^T x >= 0 with a >= 0, b > 0.
inline HCone random_lower_comprehensive(PropRng& g, std::size_t d) {
  const std::size_t m = g.index(1, 3);
  std::vector<RVec> rows;
  for (std::size_t k = 0; k < m; ++k) {
    RVec a(d + 1);
    long sum = 0, top = 0;
    for (std::size_t i = 1; i <= d; ++i) {
      long v = g.uniform(1, 5);
      a[i] = -v;
      sum += v;
      top = std::max(top, v);
    }
    // between the largest weight and the total keeps every unit vector feasible and cuts e
    a[0] = g.uniform(top, std::max(top, sum - 1));
    rows.push_back(std::move(a));
  }
  return HCone(d, std::move(rows));
}

inline RVec random_objective(PropRng& g, std::size_t d, long lo = -5, long hi = 5) {
  RVec c(d + 1);
  for (std::size_t i = 1; i <= d; ++i) c[i] = g.uniform(lo, hi);
  return c;
}

inline bool slice_empty(const HCone& k) {
  RVec e0(k.d() + 1);
  e0[0] = 1;
  return !slice_optimum(k, e0).has_value();
}

inline std::string show(const std::optional<Rational>& v) { return v ? render(*v) : "empty"; }

/// Optimum of the level-r system of K with the face equalities added at the root.
inline std::optional<Rational> optimize_on_face(const HCone& k, std::size_t r, OpKind kind, const FaceSpec& f,
                                                const RVec& c, const Guards& guards) {
  if (r == 0) return slice_optimum(face_restrict(k, f), c);
  LinearProgram lp = compile_lp(build_lifted(k, r, kind, guards));
  add_face_rows(lp, f);
  return optimize_root(std::move(lp), c, k.d());
}

/// Objective c' with c'^T y = c^T x whenever y = flip_point(x, s, perm).
inline RVec flip_objective(const RVec& c, const std::vector<std::size_t>& s, const std::vector<std::size_t>& perm) {
  const std::size_t d = c.size() - 1;
  RVec out(d + 1);
  out[0] = c[0];
  std::vector<bool> in_s(d + 1, false);
  for (auto i : s) in_s[i] = true;
  for (std::size_t i = 1; i <= d; ++i) {
    if (in_s[i]) {
      out[0] += c[i];
      out[perm[i]] = -c[i];
    } else {
      out[perm[i]] = c[i];
    }
  }
  return out;
}

/// A root point of the level-1 N system maximizing c; nullopt when empty.
inline std::optional<RVec> n1_optimal_point(const HCone& k, const RVec& c, const Guards& guards) {
  LinearProgram lp = compile_lp(build_lifted(k, 1, OpKind::N, guards));
  RVec x0(lp.variables);
  x0[0] = 1;
  lp.eq(std::move(x0), 1);
  lp.objective = pad(c, lp.variables);
  lp.sense = Sense::Maximize;
  auto out = lp_solve(lp);
  if (out.status != LpStatus::Optimal) return std::nullopt;
  return RVec(out.primal.begin(), out.primal.begin() + static_cast<long>(k.d() + 1));
}

/// The LP over K and the integral hull disagree on c.
inline bool has_gap(const HCone& k, const RVec& c) {
  std::optional<Rational> hull;
  if (!integer_points(k).empty()) hull = slice_optimum(integral_hull(k), c);
  return slice_optimum(k, c) != hull;
}

inline bool leq(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return true;
  return b && *a <= *b;
}

}  // namespace detail

/// N^r(K cap F) and N^r(K) cap F have the same optimum.
inline PropertyReport face_commutation_property(std::uint64_t seed, std::size_t count,
                                                const Guards& guards = Guards::from_env()) {
  PropertyReport rep{"face_commutation"};
  detail::PropRng g(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t d = g.index(2, 4);
    HCone k = detail::random_cone(g, d);
    FaceSpec f;
    const std::size_t i = g.index(1, d);
    (g.coin() ? f.ones : f.zeros).push_back(i);
    if (d >= 3 && g.coin()) {
      std::size_t j = g.index(1, d - 1);
      if (j >= i) ++j;
      (g.coin() ? f.ones : f.zeros).push_back(j);
    }
    const std::size_t r = d <= 3 ? g.index(1, 2) : 1;
    const OpKind kind = g.coin() ? OpKind::N : OpKind::N0;
    RVec c = detail::random_objective(g, d);
    auto lhs = n_optimize(face_restrict(k, f), r, kind, c, guards);
    auto rhs = detail::optimize_on_face(k, r, kind, f, c, guards);
    ++rep.instances;
    if (detail::has_gap(face_restrict(k, f), c)) ++rep.nontrivial;
    if (lhs != rhs)
      rep.violations.push_back("instance " + std::to_string(t) + ": " + to_string(kind) + " r=" + std::to_string(r) +
                               " restricted " + detail::show(lhs) + " vs face rows " + detail::show(rhs));
  }
  return rep;
}

/// Optimizing over N^r of a flipped and permuted cone matches the original.
inline PropertyReport flip_equivariance_property(std::uint64_t seed, std::size_t count,
                                                 const Guards& guards = Guards::from_env()) {
  PropertyReport rep{"flip_equivariance"};
  detail::PropRng g(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t d = g.index(2, 4);
    HCone k = detail::random_cone(g, d);
    std::vector<std::size_t> s, perm(d + 1);
    for (std::size_t i = 1; i <= d; ++i)
      if (g.coin()) s.push_back(i);
    for (std::size_t i = 0; i <= d; ++i) perm[i] = i;
    for (std::size_t i = d; i > 1; --i) std::swap(perm[i], perm[g.index(1, i)]);
    const std::size_t r = d <= 3 ? g.index(1, 2) : 1;
    const OpKind kind = g.coin() ? OpKind::N : OpKind::N0;
    RVec c = detail::random_objective(g, d);
    auto base = n_optimize(k, r, kind, c, guards);
    auto image = n_optimize(flip(k, s, perm), r, kind, detail::flip_objective(c, s, perm), guards);
    ++rep.instances;
    if (detail::has_gap(k, c)) ++rep.nontrivial;
    if (base != image)
      rep.violations.push_back("instance " + std::to_string(t) + ": " + detail::show(base) + " vs flipped " +
                               detail::show(image));
  }
  return rep;
}

/// Cones that agree on every facial slice x_i = 0, x_i = x0 have equal N^1 optima.
/// K' adds to K a row that is valid on all those slices but may cut the interior.
inline PropertyReport slice_lemma_property(std::uint64_t seed, std::size_t count, std::size_t objectives = 20,
                                           const Guards& guards = Guards::from_env()) {
  PropertyReport rep{"slice_lemma"};
  detail::PropRng g(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t d = g.index(2, 4);
    RVec a;
    HCone k = detail::random_interior_vertex_cone(g, d, &a);
    std::optional<Rational> low;
    for (std::size_t i = 1; i <= d; ++i) {
      for (bool one : {false, true}) {
        FaceSpec f;
        (one ? f.ones : f.zeros).push_back(i);
        auto v = slice_optimum(face_restrict(k, f), a, Sense::Minimize);
        if (v && (!low || *v < *low)) low = v;
      }
    }
    if (!low) {
      ++rep.skipped;
      continue;
    }
    RVec cut = a;
    cut[0] = -*low;
    std::vector<RVec> rows = k.rows();
    rows.push_back(cut);
    HCone k2(d, std::move(rows));
    ++rep.instances;
    if (auto inner = slice_optimum(k, a, Sense::Minimize); inner && *inner < *low) ++rep.nontrivial;
    for (std::size_t o = 0; o < objectives; ++o) {
      RVec c = detail::random_objective(g, d);
      auto v1 = n_optimize(k, 1, OpKind::N, c, guards);
      auto v2 = n_optimize(k2, 1, OpKind::N, c, guards);
      if (v1 != v2) {
        rep.violations.push_back("instance " + std::to_string(t) + " objective " + std::to_string(o) + ": " +
                                 detail::show(v1) + " vs " + detail::show(v2));
        break;
      }
    }
  }
  return rep;
}

/// hull <= N+^r <= N^r <= N0^r <= partition relaxation, for optima. The N+
/// side is compared with slack tol and only at r = 1.
inline PropertyReport operator_chain_property(std::uint64_t seed, std::size_t count, double tol = 1e-5,
                                              const Guards& guards = Guards::from_env(),
                                              double eps = sdp_eps_from_env()) {
  PropertyReport rep{"operator_chain"};
  detail::PropRng g(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t d = g.index(2, 4);
    HCone k = detail::random_cone(g, d);
    const std::size_t r = d <= 3 ? g.index(1, 2) : 1;
    RVec c = detail::random_objective(g, d);
    auto hull = slice_optimum(integral_hull(k), c);
    if (integer_points(k).empty()) hull.reset();
    auto vn = n_optimize(k, r, OpKind::N, c, guards);
    auto vn0 = n_optimize(k, r, OpKind::N0, c, guards);
    auto vt = ntilde0_optimize(k, r, c, guards);
    ++rep.instances;
    if (detail::has_gap(k, c) || vn0 != vn || vt != vn0) ++rep.nontrivial;
    const std::string tag = "instance " + std::to_string(t) + " r=" + std::to_string(r) + ": ";
    if (!detail::leq(hull, vn)) rep.violations.push_back(tag + "hull " + detail::show(hull) + " > N " + detail::show(vn));
    if (!detail::leq(vn, vn0)) rep.violations.push_back(tag + "N " + detail::show(vn) + " > N0 " + detail::show(vn0));
    if (!detail::leq(vn0, vt))
      rep.violations.push_back(tag + "N0 " + detail::show(vn0) + " > partition " + detail::show(vt));
    if (r == 1) {
      NPlusResult p = nplus_optimize(k, 1, c, guards, eps);
      if (p.status == SdpStatus::Optimal) {
        if (!vn || p.value > vn->get_d() + tol)
          rep.violations.push_back(tag + "N+ " + std::to_string(p.value) + " > N " + detail::show(vn));
        if (hull && p.value < hull->get_d() - tol)
          rep.violations.push_back(tag + "N+ " + std::to_string(p.value) + " < hull " + detail::show(hull));
      } else if (p.status == SdpStatus::Infeasible) {
        if (hull) rep.violations.push_back(tag + "N+ empty but the hull is not");
      } else {
        rep.violations.push_back(tag + "N+ solve " + to_string(p.status));
      }
    }
  }
  return rep;
}

/// For lower comprehensive P and x in N(P) (resp. N+(P)), zeroing any single
/// coordinate stays inside. N is exact; N+ points are scaled by 9/10 toward
/// the origin and rounded down to a 1/1000 grid before use.
inline PropertyReport lower_comprehensive_property(std::uint64_t seed, std::size_t count,
                                                   const Guards& guards = Guards::from_env(),
                                                   double eps = sdp_eps_from_env()) {
  PropertyReport rep{"lower_comprehensive"};
  detail::PropRng g(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t d = g.index(2, 4);
    HCone k = detail::random_lower_comprehensive(g, d);
    RVec c = detail::random_objective(g, d, 0, 5);
    const std::string tag = "instance " + std::to_string(t) + ": ";
    ++rep.instances;
    auto x = detail::n1_optimal_point(k, c, guards);
    if (!x) {
      rep.violations.push_back(tag + "N(P) empty although 0 is in P");
      continue;
    }
    for (std::size_t j = 1; j <= d; ++j)
      if ((*x)[j].get_den() != 1) {
        ++rep.nontrivial;
        break;
      }
    for (std::size_t j = 1; j <= d; ++j) {
      if (sgn((*x)[j]) <= 0) continue;
      RVec z = *x;
      z[j] = 0;
      if (!n_member(k, 1, OpKind::N, z, guards).member)
        rep.violations.push_back(tag + "N: zeroing x_" + std::to_string(j) + " of (" + render(*x) + ") leaves");
    }
    NPlusResult p = nplus_optimize(k, 1, c, guards, eps);
    if (p.status != SdpStatus::Optimal) {
      rep.violations.push_back(tag + "N+ solve " + to_string(p.status));
      continue;
    }
    std::vector<double> y(p.outcome.y.data(), p.outcome.y.data() + p.outcome.y.size());
    auto root = evaluate_certificate<double>(p.system, y).nodes.front().v;
    RVec xp(d + 1);
    xp[0] = 1;
    for (std::size_t i = 1; i <= d; ++i) {
      double v = std::max(0.0, 0.9 * root[i]);
      xp[i] = frac(static_cast<long>(std::floor(v * 1000.0)), 1000);
    }
    if (nplus_member(k, 1, xp, guards, eps).status != SdpStatus::Optimal) {
      ++rep.skipped;
      continue;
    }
    for (std::size_t j = 1; j <= d; ++j) {
      if (sgn(xp[j]) <= 0) continue;
      RVec z = xp;
      z[j] = 0;
      SdpStatus s = nplus_member(k, 1, z, guards, eps).status;
      if (s != SdpStatus::Optimal)
        rep.violations.push_back(tag + "N+: zeroing x_" + std::to_string(j) + " of (" + render(xp) + ") gives " +
                                 to_string(s));
    }
  }
  return rep;
}

/// N^d(K) is the integral hull: equal optima, or both empty.
inline PropertyReport level_d_collapse_property(std::uint64_t seed, std::size_t count,
                                                const Guards& guards = Guards::from_env()) {
  PropertyReport rep{"level_d_collapse"};
  detail::PropRng g(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t d = g.index(2, 4);
    HCone k = detail::random_cone(g, d);
    RVec c = detail::random_objective(g, d);
    std::optional<Rational> hull;
    if (!integer_points(k).empty()) hull = slice_optimum(integral_hull(k), c);
    auto top = n_optimize(k, d, OpKind::N, c, guards);
    ++rep.instances;
    if (detail::has_gap(k, c)) ++rep.nontrivial;
    if (top != hull)
      rep.violations.push_back("instance " + std::to_string(t) + " d=" + std::to_string(d) + ": N^d " +
                               detail::show(top) + " vs hull " + detail::show(hull));
  }
  return rep;
}

inline const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{"face_commutation",    "flip_equivariance", "slice_lemma",
                                              "operator_chain",      "lower_comprehensive", "level_d_collapse"};
  return names;
}

inline PropertyReport run_property(const std::string& name, std::uint64_t seed, std::size_t count,
                                   const Guards& guards = Guards::from_env(), double eps = sdp_eps_from_env()) {
  if (name == "face_commutation") return face_commutation_property(seed, count, guards);
  if (name == "flip_equivariance") return flip_equivariance_property(seed, count, guards);
  if (name == "slice_lemma") return slice_lemma_property(seed, count, 20, guards);
  if (name == "operator_chain") return operator_chain_property(seed, count, 1e-5, guards, eps);
  if (name == "lower_comprehensive") return lower_comprehensive_property(seed, count, guards, eps);
  if (name == "level_d_collapse") return level_d_collapse_property(seed, count, guards);
  throw DomainError("unknown property suite '" + name + "'");
}

}  // namespace liftproj

#endif  // LIFTPROJ_PROPERTIES_HPP_
