#include <gtest/gtest.h>

#include <random>

#include "liftproj/lsplus.hpp"

using namespace liftproj;

namespace {

constexpr double kSdpTol = 1e-5;
constexpr double kRecTol = 1e-4;

Rational q(long p, long d = 1) { return frac(p, d); }

RVec ones(std::size_t d) {
  RVec c(d + 1, q(1));
  c[0] = 0;
  return c;
}

RVec constant_point(std::size_t d, const Rational& v) {
  RVec x(d + 1, v);
  x[0] = 1;
  return x;
}

RMat third_matrix() {
  RMat y(5, 5);
  y(0, 0) = 1;
  for (std::size_t i = 1; i < 5; ++i) y(0, i) = y(i, 0) = y(i, i) = q(1, 3);
  return y;
}

HCone k4() { return gen_frac(4, complete_graph(4)); }

}  // namespace

TEST(NPlusOptimize, CliqueOnK4) {
  NPlusResult r = nplus_optimize(k4(), 1, ones(4));
  ASSERT_EQ(r.status, SdpStatus::Optimal) << r.outcome.message;
  EXPECT_NEAR(r.value, 1.0, kSdpTol);
}

TEST(NPlusOptimize, Example2Ladder) {
  HCone k = gen_example2(4);
  NPlusResult r1 = nplus_optimize(k, 1, ones(4));
  ASSERT_EQ(r1.status, SdpStatus::Optimal);
  EXPECT_NEAR(r1.value, 16.0 / 7, kRecTol);
  NPlusResult r2 = nplus_optimize(k, 2, ones(4));
  ASSERT_EQ(r2.status, SdpStatus::Optimal);
  EXPECT_NEAR(r2.value, 2.0, kRecTol);
}

TEST(NPlusOptimize, NotAboveN) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-2, 3);
  for (const auto& k : {gen_frac(5, cycle_graph(5)), gen_example2(4), gen_matching(4)}) {
    for (int t = 0; t < 4; ++t) {
      RVec c(k.d() + 1);
      for (std::size_t i = 1; i <= k.d(); ++i) c[i] = coef(rng);
      NPlusResult p = nplus_optimize(k, 1, c);
      ASSERT_EQ(p.status, SdpStatus::Optimal) << p.outcome.message;
      EXPECT_LE(p.value, to_double(*n_optimize(k, 1, OpKind::N, c)) + kSdpTol);
    }
  }
}

TEST(NPlusFeasible, CrossLadder) {
  HCone k = gen_cross(3, 2);
  for (std::size_t r = 0; r <= 2; ++r) EXPECT_EQ(nplus_feasible(k, r).status, SdpStatus::Optimal) << r;
  NPlusResult r3 = nplus_feasible(k, 3);
  EXPECT_EQ(r3.status, SdpStatus::Infeasible);
  EXPECT_GT(r3.outcome.margin, 0);
  NPlusResult m = nplus_member(k, 2, constant_point(3, q(1, 2)));
  EXPECT_EQ(m.status, SdpStatus::Optimal);
}

TEST(NPlusFeasible, BoxAlwaysNonempty) {
  for (std::size_t r = 0; r <= 2; ++r) EXPECT_EQ(nplus_feasible(gen_box(3), r).status, SdpStatus::Optimal);
}

TEST(Thm42, CrossCenter) {
  HCone p = gen_cross(3, 2);
  Thm42Result t = thm42_certificate(p, constant_point(3, q(1, 2)));
  ASSERT_TRUE(t.ok);
  EXPECT_TRUE(t.check.valid);
  EXPECT_TRUE(verify_mplus(p, t.y).valid);
  EXPECT_EQ(t.y(1, 1), q(1, 2));
  EXPECT_EQ(t.y(1, 2), q(1, 4));
}

TEST(Thm42, IntegralPointIsRankOne) {
  HCone p = gen_frac(5, cycle_graph(5));
  RVec x{q(1), q(1), q(0), q(1), q(0), q(0)};
  Thm42Result t = thm42_certificate(p, x);
  ASSERT_TRUE(t.ok);
  EXPECT_EQ(t.y, RMat::outer(x, x));
}

TEST(Thm42, HypothesisFailsOnK4) {
  Thm42Result t = thm42_certificate(k4(), constant_point(4, q(1, 3)));
  EXPECT_FALSE(t.ok);
  EXPECT_GE(t.failing, 1u);
  EXPECT_LE(t.failing, 4u);
}

TEST(Thm42, SoundOnRandomPoints) {
  // whenever a certificate is built, the point passes the SDP membership test
  HCone p = gen_cross(3, 2);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(0, 4);
  int built = 0;
  for (int t = 0; t < 30 && built < 5; ++t) {
    RVec x{q(1), q(num(rng), 4), q(num(rng), 4), q(num(rng), 4)};
    if (!slice_member(p, x)) continue;
    Thm42Result c = thm42_certificate(p, x);
    if (!c.ok) continue;
    ++built;
    EXPECT_TRUE(c.check.valid);
    EXPECT_EQ(nplus_member(p, 1, x).status, SdpStatus::Optimal);
  }
  EXPECT_GT(built, 0);
}

TEST(VerifyMPlus, ThirdMatrixFailsPsd) {
  MPlusCheck c = verify_mplus(k4(), third_matrix());
  EXPECT_FALSE(c.valid);
  EXPECT_EQ(c.violated, "psd");
  ASSERT_EQ(c.witness.size(), 5u);
  EXPECT_LT(sgn(c.witness_value), 0);
  const RMat y = third_matrix();
  auto form = [&](const RVec& w) {
    Rational s = 0;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) s += w[i] * y(i, j) * w[j];
    return s;
  };
  EXPECT_EQ(form(c.witness), c.witness_value);
  EXPECT_EQ(form({q(1), q(-1), q(-1), q(-1), q(-1)}), q(-1, 3));
}

TEST(VerifyMPlus, ZeroMatrixValid) {
  EXPECT_TRUE(verify_mplus(gen_example2(4), RMat(5, 5)).valid);
  EXPECT_TRUE(verify_mplus(k4(), Mat(Mat::Zero(5, 5))).valid);
}

TEST(VerifyMPlus, DiagonalConditionChecked) {
  RMat y = RMat::diagonal({q(1), q(2), q(0), q(0), q(0)});
  MPlusCheck c = verify_mplus(k4(), y);
  EXPECT_FALSE(c.valid);
  EXPECT_THROW(verify_mplus(k4(), RMat(4, 4)), DimensionError);
}

TEST(Corequal, Hypothesis) {
  EXPECT_TRUE(corequal_hypothesis(gen_cross(3, 2)));
  EXPECT_TRUE(corequal_hypothesis(gen_cross(4, 3)));
  EXPECT_FALSE(corequal_hypothesis(k4()));
}

TEST(Corequal, ContainsSmallerBall) {
  EXPECT_TRUE(cone_include(gen_cross(3, 1), corequal_set(gen_cross(3, 2))));
  EXPECT_TRUE(cone_include(corequal_set(gen_cross(3, 2)), gen_cross(3, 2)));
}

TEST(Corequal, OperatorsAgreeUnderHypothesis) {
  // with the hypothesis in force N+, N, N0 and the corequal set share optima
  HCone p = gen_cross(3, 2);
  HCone s = corequal_set(p);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < 10; ++t) {
    RVec c(4);
    for (std::size_t i = 1; i <= 3; ++i) c[i] = coef(rng);
    Rational ref = *slice_optimum(s, c);
    EXPECT_EQ(*n_optimize(p, 1, OpKind::N, c), ref) << t;
    EXPECT_EQ(*n_optimize(p, 1, OpKind::N0, c), ref) << t;
    NPlusResult np = nplus_optimize(p, 1, c);
    ASSERT_EQ(np.status, SdpStatus::Optimal);
    EXPECT_NEAR(np.value, to_double(ref), kSdpTol) << t;
  }
}

TEST(Thm36, BlossomOnMatching) {
  HCone m = gen_matching(4);
  RVec a(7);
  a[matching_edge_index(4, 1, 2)] = 1;
  a[matching_edge_index(4, 1, 3)] = 1;
  a[matching_edge_index(4, 2, 3)] = 1;
  EXPECT_TRUE(thm36_rank_certify(m, a, q(1), 1).certified);
  EXPECT_EQ(*slice_optimum(m, a), q(3, 2));
}

TEST(Thm36, Example2AtHalfDimension) {
  HCone k = gen_example2(4);
  EXPECT_TRUE(thm36_rank_certify(k, ones(4), q(2), 2).certified);
  RankCertify one = thm36_rank_certify(k, ones(4), q(2), 1);
  EXPECT_FALSE(one.certified);
  EXPECT_EQ(one.failing.size(), 1u);
}

TEST(Thm36, SoundAgainstSdp) {
  // a certified inequality holds on the level-r SDP relaxation
  HCone k = gen_frac(5, cycle_graph(5));
  RVec a = ones(5);
  ASSERT_TRUE(thm36_rank_certify(k, a, q(2), 1).certified);
  NPlusResult r = nplus_optimize(k, 1, a);
  ASSERT_EQ(r.status, SdpStatus::Optimal);
  EXPECT_LE(r.value, 2.0 + kSdpTol);
}

TEST(Thm36, RejectsNegativeWeights) {
  RVec a = ones(4);
  a[2] = -1;
  EXPECT_THROW(thm36_rank_certify(k4(), a, q(1), 1), DomainError);
}

TEST(NPlusRank, CliqueNeedsOneLevel) {
  NPlusRank r = nplus_inequality_rank(k4(), ones(4), q(1), 3);
  ASSERT_TRUE(r.rank.has_value());
  EXPECT_EQ(*r.rank, 1u);
}
