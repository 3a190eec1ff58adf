#ifndef LIFTPROJ_DOUBLE_DESCRIPTION_HPP_
#define LIFTPROJ_DOUBLE_DESCRIPTION_HPP_

// Double description method for {a : g^T a >= 0 for every g in G}.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "liftproj/exact_linalg.hpp"
#include "liftproj/rational.hpp"

namespace liftproj {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1u; }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct ConeGenerators {
  std::vector<RVec> rays;       // extreme rays, primitive integer vectors
  std::vector<RVec> lineality;  // basis of the lineality space
};

/// Extreme rays and lineality of {a in Q^n : G a >= 0}.
inline ConeGenerators dd_rays(const std::vector<RVec>& g, std::size_t n) {
  ConeGenerators out;
  out.lineality = nullspace(g, n);
  for (auto& v : out.lineality) v = primitive(v);

  // Independent rows B spanning the row space of G.
  std::vector<std::size_t> basis_rows;
  {
    std::vector<RVec> acc;
    for (std::size_t i = 0; i < g.size(); ++i) {
      acc.push_back(g[i]);
      if (rank_of(acc, n) == acc.size()) {
        basis_rows.push_back(i);
      } else {
        acc.pop_back();
      }
      if (acc.size() == n) break;
    }
  }
  const std::size_t k = basis_rows.size();
  if (k == 0) return out;

  // Initial simplicial cone: r_j in rowspace(G_B) with G_B r_j = e_j.
  std::vector<RVec> gram(k, RVec(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) gram[a][b] = dot(g[basis_rows[a]], g[basis_rows[b]]);
  struct Ray {
    RVec v;
    Bits zeros;
  };
  std::vector<Ray> rays;
  for (std::size_t j = 0; j < k; ++j) {
    RVec e(k);
    e[j] = 1;
    auto coef = solve_square(gram, e);
    RVec v(n);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t t = 0; t < n; ++t)
        if (sgn((*coef)[a]) != 0 && sgn(g[basis_rows[a]][t]) != 0) v[t] += (*coef)[a] * g[basis_rows[a]][t];
    rays.push_back({primitive(v), Bits(g.size())});
  }
  std::vector<bool> processed(g.size(), false);
  for (std::size_t a = 0; a < k; ++a) processed[basis_rows[a]] = true;
  for (auto& r : rays)
    for (std::size_t i = 0; i < g.size(); ++i)
      if (processed[i] && sgn(dot(g[i], r.v)) == 0) r.zeros.set(i);

  for (std::size_t h = 0; h < g.size(); ++h) {
    if (processed[h]) continue;
    processed[h] = true;
    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t t = 0; t < rays.size(); ++t) {
      val[t] = dot(g[h], rays[t].v);
      int s = sgn(val[t]);
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(t);
    }
    if (neg.empty()) {
      for (auto t : zero) rays[t].zeros.set(h);
      continue;
    }
    std::vector<Ray> next;
    for (auto t : pos) next.push_back(rays[t]);
    for (auto t : zero) {
      next.push_back(rays[t]);
      next.back().zeros.set(h);
    }
    for (auto p : pos) {
      for (auto q : neg) {
        Bits common = rays[p].zeros & rays[q].zeros;
        // Combinatorial adjacency: no other ray vanishes on all common zeros.
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t)
          if (t != p && t != q && common.subset_of(rays[t].zeros)) adjacent = false;
        if (!adjacent) continue;
        RVec v(n);
        for (std::size_t c = 0; c < n; ++c) v[c] = val[p] * rays[q].v[c] - val[q] * rays[p].v[c];
        Ray r{primitive(v), common};
        r.zeros.set(h);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
  }
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

}  // namespace liftproj

#endif  // LIFTPROJ_DOUBLE_DESCRIPTION_HPP_
