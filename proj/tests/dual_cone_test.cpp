#include <gtest/gtest.h>

#include <random>

#include "liftproj/dual_cone.hpp"
#include "liftproj/lifted.hpp"
#include "liftproj/lsplus.hpp"

using namespace liftproj;

namespace {

Rational q(long p, long d = 1) { return frac(p, d); }

HCone k4() { return gen_frac(4, complete_graph(4)); }

RMat third_matrix() {
  RMat y(5, 5);
  y(0, 0) = 1;
  for (std::size_t i = 1; i < 5; ++i) y(0, i) = y(i, 0) = y(i, i) = q(1, 3);
  return y;
}

Rational inner(const RMat& a, const RMat& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * b(i, j);
  return s;
}

RMat e(std::size_t n, std::size_t i, std::size_t j) {
  RMat m(n, n);
  m(i, j) = 1;
  return m;
}

RVec ones(std::size_t d) {
  RVec c(d + 1, q(1));
  c[0] = 0;
  return c;
}

}  // namespace

TEST(BuildGens, BoxInDimensionOne) {
  MatrixConeGens g = build_gens(gen_box(1), GenVariant::Symmetric);
  EXPECT_EQ(g.cone.size(), 4u);
  EXPECT_EQ(g.subspace.size(), 1u);
  for (const auto& m : g.cone) EXPECT_TRUE(m.symmetric());
}

TEST(BuildGens, CliqueCounts) {
  HCone k = k4();
  MatrixConeGens g = build_gens(k, GenVariant::Symmetric);
  EXPECT_EQ(k.rows().size(), 14u);
  EXPECT_EQ(g.cone.size(), 2u * 4u * 14u);
  EXPECT_EQ(g.subspace.size(), 4u);
}

TEST(BuildGens, NonsymmetricHasEdgeProducts) {
  MatrixConeGens g = build_gens(k4(), GenVariant::Nonsymmetric);
  // e_1 (e_0 - e_1 - e_2)^T
  RMat want(5, 5);
  want(1, 0) = 1;
  want(1, 1) = -1;
  want(1, 2) = -1;
  bool found = false;
  for (const auto& m : g.cone) found = found || m == want;
  EXPECT_TRUE(found);
  EXPECT_EQ(g.subspace.size(), 8u);
}

TEST(MemberTDperp, SubspaceElement) {
  for (std::size_t i = 1; i <= 4; ++i) {
    RMat s = e(5, 0, i) + e(5, i, 0);
    s(i, i) = -2;
    EXPECT_TRUE(member_t_dperp(k4(), s).member) << i;
  }
  EXPECT_TRUE(member_t_dperp(k4(), RMat(5, 5)).member);
}

TEST(MemberTDperp, OuterProductSeparated) {
  RVec x{q(1), q(-1), q(-1), q(-1), q(-1)};
  HCone k = k4();
  ConeMembership m = member_t_dperp(k, RMat::outer(x, x));
  ASSERT_FALSE(m.member);
  EXPECT_EQ(m.separation, q(-1, 3));
  EXPECT_EQ(inner(m.separator, RMat::outer(x, x)), q(-1, 3));
  EXPECT_TRUE(dual_member(k, m.separator));
  for (const auto& g : build_gens(k, GenVariant::Symmetric).cone) EXPECT_GE(inner(m.separator, g), 0);
}

TEST(MemberTDperp, MembersPairNonnegativelyWithLiftedMatrices) {
  // anything in T + D-perp pairs nonnegatively with every Y in M(K)
  HCone k = gen_cross(3, 2);
  RMat y = thm42_certificate(k, {q(1), q(1, 2), q(1, 2), q(1, 2)}).y;
  ASSERT_TRUE(dual_member(k, y));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> v(-2, 2);
  int members = 0;
  for (int t = 0; t < 40; ++t) {
    RMat s(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) s(i, j) = s(j, i) = v(rng);
    ConeMembership m = member_t_dperp(k, s);
    if (m.member) {
      ++members;
      EXPECT_GE(inner(y, s), 0);
    } else {
      EXPECT_LT(sgn(m.separation), 0);
      EXPECT_EQ(inner(m.separator, s), m.separation);
    }
  }
  EXPECT_GT(members, 0);
}

TEST(DualMember, Examples) {
  EXPECT_TRUE(dual_member(k4(), third_matrix()));
  RVec x{q(1), q(0), q(1), q(0), q(0)};
  EXPECT_TRUE(dual_member(k4(), RMat::outer(x, x)));
  EXPECT_FALSE(dual_member(k4(), RMat::diagonal({q(1), q(2), q(0), q(0), q(0)})));
}

TEST(DualMember, MatchesColumnConditions) {
  // dual membership equals the lifted-matrix conditions without the PSD part
  HCone k = gen_frac(3, {{1, 2}, {2, 3}});
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> v(0, 4);
  int inside = 0;
  for (int t = 0; t < 200; ++t) {
    RMat y(4, 4);
    y(0, 0) = 1;
    for (std::size_t i = 1; i < 4; ++i) y(0, i) = y(i, 0) = y(i, i) = q(v(rng), 4);
    for (std::size_t i = 1; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) y(i, j) = y(j, i) = q(v(rng), 4);
    MPlusCheck c = verify_mplus(k, y);
    const bool polyhedral = c.valid || c.violated == "psd";
    EXPECT_EQ(dual_member(k, y), polyhedral) << t;
    inside += polyhedral;
  }
  EXPECT_GT(inside, 0);
}

TEST(Skew, CompleteGraphs) {
  EXPECT_TRUE(thm63_skew_check(k4()).holds);
  EXPECT_TRUE(thm63_skew_check(gen_frac(5, complete_graph(5))).holds);
}

TEST(Skew, HoldsImpliesOperatorsAgree) {
  HCone k = k4();
  ASSERT_TRUE(thm63_skew_check(k).holds);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> v(-2, 3);
  for (int t = 0; t < 6; ++t) {
    RVec c(5);
    for (std::size_t i = 1; i <= 4; ++i) c[i] = v(rng);
    EXPECT_EQ(*n_optimize(k, 1, OpKind::N, c), *n_optimize(k, 1, OpKind::N0, c)) << t;
  }
  EXPECT_EQ(*n_optimize(k, 2, OpKind::N0, ones(4)), q(1));
}

TEST(Skew, SquareBox) {
  // the condition is only sufficient: it fails on the box although N and N0
  // both return the box itself
  HCone k = gen_box(2);
  SkewCheck s = thm63_skew_check(k);
  EXPECT_FALSE(s.holds);
  EXPECT_EQ(s.i, 1u);
  EXPECT_EQ(s.j, 2u);
  for (const RVec& c : {RVec{q(0), q(1), q(-1)}, RVec{q(0), q(2), q(3)}})
    EXPECT_EQ(*n_optimize(k, 1, OpKind::N, c), *n_optimize(k, 1, OpKind::N0, c));
}

TEST(Skew, FailsOnHalfspace) {
  HCone k = homogenize({{q(1), q(1), q(1)}}, {q(3, 2)}, 3);
  SkewCheck s = thm63_skew_check(k);
  EXPECT_FALSE(s.holds);
  EXPECT_LT(s.i, s.j);
}
