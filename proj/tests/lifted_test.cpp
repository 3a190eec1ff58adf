#include <gtest/gtest.h>

#include <sstream>

#include "liftproj/certificate.hpp"
#include "liftproj/lifted.hpp"

using namespace liftproj;

namespace {

Rational q(long p, long d = 1) { return frac(p, d); }

RVec ones(std::size_t d) {
  RVec c(d + 1, q(1));
  c[0] = 0;
  return c;
}

RVec center(std::size_t d) {
  RVec x(d + 1, q(1, 2));
  x[0] = 1;
  return x;
}

HCone halfspace3() { return homogenize({{q(1), q(1), q(1)}}, {q(3, 2)}, 3); }

}  // namespace

TEST(BuildLifted, LevelZeroIsCone) {
  HCone k = gen_example2(4);
  EXPECT_EQ(*n_optimize(k, 0, OpKind::N, ones(4)), *slice_optimum(k, ones(4)));
  EXPECT_EQ(*n_optimize(k, 0, OpKind::N0, ones(4)), q(8, 3));
}

TEST(BuildLifted, LevelOneShape) {
  LiftedSystem s = build_lifted(gen_box(2), 1, OpKind::N);
  ASSERT_FALSE(s.nodes.empty());
  EXPECT_EQ(s.nodes[0].y.size(), 9u);
  EXPECT_EQ(s.depth, 1u);
  EXPECT_LE(s.nodes.size(), 1u + 4u);
}

TEST(BuildLifted, GuardTrips) {
  Guards g;
  g.max_variables = 50;
  EXPECT_THROW(build_lifted(gen_example2(6), 2, OpKind::N, g), GuardExceeded);
}

TEST(NOptimize, OddCycle) { EXPECT_EQ(*n_optimize(gen_frac(5, cycle_graph(5)), 1, OpKind::N, ones(5)), q(2)); }

TEST(NOptimize, Example2Ladder) {
  HCone k = gen_example2(4);
  // 4 c(1,0,0) with c(1,0,0) = 1/2 + 1/14
  EXPECT_EQ(*n_optimize(k, 1, OpKind::N, ones(4)), q(16, 7));
  EXPECT_EQ(*n_optimize(k, 2, OpKind::N, ones(4)), q(2));
}

TEST(NOptimize, CliqueOnK4) {
  HCone k = gen_frac(4, complete_graph(4));
  EXPECT_EQ(*n_optimize(k, 1, OpKind::N, ones(4)), q(4, 3));
  EXPECT_EQ(*n_optimize(k, 2, OpKind::N, ones(4)), q(1));
}

TEST(NOptimize, CrossEmptiesAtLevelD) {
  HCone k = gen_cross(3, 2);
  for (std::size_t r = 0; r < 3; ++r) EXPECT_TRUE(n_optimize(k, r, OpKind::N, ones(3)).has_value()) << r;
  EXPECT_FALSE(n_optimize(k, 3, OpKind::N, ones(3)).has_value());
}

TEST(NOptimize, OperatorOrder) {
  // N^r within N0^r within the partition relaxation, so optima are ordered
  for (const auto& k : {gen_example2(4), gen_frac(5, cycle_graph(5)), halfspace3()}) {
    for (std::size_t r = 1; r <= 2; ++r) {
      auto n = n_optimize(k, r, OpKind::N, ones(k.d()));
      auto n0 = n_optimize(k, r, OpKind::N0, ones(k.d()));
      auto t = ntilde0_optimize(k, r, ones(k.d()));
      ASSERT_TRUE(n && n0 && t);
      EXPECT_LE(*n, *n0);
      EXPECT_LE(*n0, *t);
    }
  }
}

TEST(NOptimize, N0MatchesPartitionAtLevelOne) {
  for (const auto& k : {gen_example2(4), gen_frac(4, complete_graph(4)), halfspace3(), gen_matching(4)})
    EXPECT_EQ(*n_optimize(k, 1, OpKind::N0, ones(k.d())), *ntilde0_optimize(k, 1, ones(k.d())));
}

TEST(NMember, ZeroIsMember) {
  RVec z(4);
  EXPECT_TRUE(n_member(halfspace3(), 2, OpKind::N, z).member);
}

TEST(NMember, CenterOfHalfspace) {
  HCone k = halfspace3();
  MemberResult m = n_member(k, 2, OpKind::N0, center(3));
  ASSERT_FALSE(m.member);
  // the separator is valid on the relaxation and cuts the point
  EXPECT_LT(sgn(dot(m.separator, center(3))), 0);
  auto lo = n_optimize(k, 2, OpKind::N0, [&] {
    RVec neg(m.separator.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -m.separator[i];
    return neg;
  }());
  ASSERT_TRUE(lo.has_value());
  EXPECT_LE(*lo, q(0));
  EXPECT_TRUE(ntilde0_member(k, 2, center(3)));
}

TEST(NMember, Example2Center) {
  HCone k = gen_example2(4);
  MemberResult m = n_member(k, 1, OpKind::N, center(4));
  ASSERT_TRUE(m.member);
  EXPECT_TRUE(verify_certificate(k, m.certificate).valid);
  RVec beyond(5, q(4, 7));
  beyond[0] = 1;
  EXPECT_TRUE(n_member(k, 1, OpKind::N, beyond).member);
  beyond[1] = q(3, 5);
  EXPECT_FALSE(n_member(k, 1, OpKind::N, beyond).member);
}

TEST(NTilde0Member, ContainsN0Members) {
  HCone k = gen_example2(4);
  for (const RVec& x : {center(4), RVec{q(1), q(1), q(1, 3), q(1, 3), q(1, 3)}, RVec{q(1), q(1), q(0), q(1), q(0)}}) {
    if (n_member(k, 2, OpKind::N0, x).member) EXPECT_TRUE(ntilde0_member(k, 2, x));
  }
}

TEST(NTilde0Member, LevelDIsHull) {
  HCone k = gen_example2(4);
  EXPECT_TRUE(ntilde0_member(k, 4, center(4)));
  RVec x(5, q(3, 5));
  x[0] = 1;
  EXPECT_FALSE(ntilde0_member(k, 4, x));
  EXPECT_EQ(slice_member(integral_hull(k), x), false);
}

TEST(InequalityRank, Example2) {
  RankResult r = inequality_rank(gen_example2(4), ones(4), q(2), OpKind::N, 4);
  ASSERT_TRUE(r.rank.has_value());
  EXPECT_EQ(*r.rank, 2u);
  ASSERT_EQ(r.values.size(), 3u);
  EXPECT_EQ(*r.values[0], q(8, 3));
}

TEST(InequalityRank, Clique) {
  RankResult r = inequality_rank(gen_frac(4, complete_graph(4)), ones(4), q(1), OpKind::N, 3);
  ASSERT_TRUE(r.rank.has_value());
  EXPECT_EQ(*r.rank, 2u);
}

TEST(InequalityRank, RowOfConeIsZero) {
  HCone k = gen_frac(5, cycle_graph(5));
  for (const auto& a : k.extra_rows()) {
    // a^T x >= 0 rewritten as (-a_1..)^T x <= a_0 x0
    RVec c(a.size());
    for (std::size_t i = 1; i < a.size(); ++i) c[i] = -a[i];
    EXPECT_EQ(*inequality_rank(k, c, a[0], OpKind::N, 2).rank, 0u);
  }
}

TEST(InequalityRank, ExceedsBudget) {
  RankResult r = inequality_rank(gen_example2(4), ones(4), q(2), OpKind::N, 1);
  EXPECT_FALSE(r.rank.has_value());
}

TEST(ConeRank, BoxAndCross) {
  EXPECT_EQ(*cone_rank(gen_box(3), OpKind::N, 2).rank, 0u);
  EXPECT_EQ(*cone_rank(gen_cross(3, 2), OpKind::N, 3).rank, 3u);
  EXPECT_EQ(*cone_rank(gen_example2(4), OpKind::N, 3).rank, 2u);
}

TEST(Certificate, RoundTrip) {
  HCone k = gen_frac(5, cycle_graph(5));
  RVec x(6, q(2, 5));
  x[0] = 1;
  MemberResult m = n_member(k, 1, OpKind::N, x);
  ASSERT_TRUE(m.member);
  std::istringstream in(write_certificate(m.certificate));
  CertificateReader reader(in);
  EXPECT_TRUE(reader.header().exact);
  auto back = reader.read<Rational>();
  EXPECT_TRUE(verify_certificate(k, back).valid);
  // a certificate is tied to its cone
  EXPECT_FALSE(verify_certificate(gen_frac(5, complete_graph(5)), back).valid);
}

TEST(Certificate, TamperedEntryRejected) {
  HCone k = gen_example2(4);
  MemberResult m = n_member(k, 1, OpKind::N, center(4));
  ASSERT_TRUE(m.member);
  auto c = m.certificate;
  ASSERT_GT(c.nodes.size(), 1u);
  c.nodes.back().v[1] += q(1, 3);
  EXPECT_FALSE(verify_certificate(k, c).valid);
}
