#include <gtest/gtest.h>

#include <random>

#include "liftproj/lp.hpp"

using namespace liftproj;

namespace {

Rational q(long p, long d = 1) { return frac(p, d); }

}  // namespace

TEST(Lp, BoxMaximum) {
  LinearProgram lp(1);
  lp.geq({q(-1)}, q(-1));
  lp.geq({q(1)}, 0);
  lp.objective = {q(1)};
  auto out = lp_solve(lp);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_EQ(out.value, 1);
  EXPECT_EQ(check_outcome(lp, out), "");
}

TEST(Lp, FarkasPair) {
  LinearProgram lp(1);
  lp.geq({q(1)}, 1);
  lp.geq({q(-1)}, 0);
  auto out = lp_solve(lp);
  ASSERT_EQ(out.status, LpStatus::Infeasible);
  EXPECT_EQ(out.dual, make_rvec({1, 1}));
}

TEST(Lp, FracC5) {
  // max sum x over x_i + x_{i+1} <= 1, 0 <= x <= 1.
  LinearProgram lp(5);
  for (std::size_t i = 0; i < 5; ++i) {
    RVec a(5);
    a[i] = -1;
    a[(i + 1) % 5] = -1;
    lp.geq(a, -1);
    RVec e(5);
    e[i] = 1;
    lp.geq(e, 0);
    e[i] = -1;
    lp.geq(e, -1);
  }
  lp.objective = RVec(5, q(1));
  auto out = lp_solve(lp);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_EQ(out.value, q(5, 2));
  EXPECT_EQ(out.primal, RVec(5, q(1, 2)));
}

TEST(Lp, UnboundedAndEqualities) {
  LinearProgram lp(2);
  lp.geq({q(1), q(0)}, 0);
  lp.eq({q(1), q(-1)}, 1);
  lp.objective = {q(1), q(1)};
  auto out = lp_solve(lp);
  EXPECT_EQ(out.status, LpStatus::Unbounded);
  lp.sense = Sense::Minimize;
  out = lp_solve(lp);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_EQ(out.value, -1);
  EXPECT_EQ(check_outcome(lp, out), "");
}

TEST(Lp, DuplicatesAndZeroRows) {
  LinearProgram lp(2);
  lp.geq({q(1), q(1)}, 1);
  lp.geq({q(2), q(2)}, 2);
  lp.geq({q(0), q(0)}, -3);
  lp.geq({q(-1), q(0)}, -5);
  lp.geq({q(0), q(-1)}, -5);
  lp.sense = Sense::Minimize;
  lp.objective = {q(1), q(1)};
  auto out = lp_solve(lp);
  ASSERT_EQ(out.status, LpStatus::Optimal);
  EXPECT_EQ(out.value, 1);
  lp.geq({q(0), q(0)}, 1);
  EXPECT_EQ(lp_solve(lp).status, LpStatus::Infeasible);
}

TEST(Lp, NoVariables) {
  LinearProgram lp(0);
  lp.geq({}, -1);
  EXPECT_EQ(lp_solve(lp).status, LpStatus::Optimal);
  lp.geq({}, 2);
  EXPECT_EQ(lp_solve(lp).status, LpStatus::Infeasible);
}

// Random small programs: every returned certificate is rechecked, and
// repeated solves are identical.
TEST(Lp, RandomCertificatesDeterministic) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coef(-5, 5);
  int counts[3] = {0, 0, 0};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 4, m = 1 + trial % 7;
    LinearProgram lp(n);
    for (std::size_t i = 0; i < m; ++i) {
      RVec a(n);
      for (auto& x : a) x = coef(rng);
      lp.add(a, trial % 5 == 0 && i == 0 ? Relation::Eq : Relation::Geq, frac(coef(rng), 2));
    }
    for (auto& x : lp.objective) x = coef(rng);
    lp.sense = trial % 2 ? Sense::Maximize : Sense::Minimize;
    auto a = lp_solve(lp);
    auto b = lp_solve(lp);
    EXPECT_EQ(check_outcome(lp, a), "");
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.primal, b.primal);
    EXPECT_EQ(a.dual, b.dual);
    EXPECT_EQ(a.pivots, b.pivots);
    ++counts[static_cast<int>(a.status)];
  }
  EXPECT_GT(counts[0], 0);
  EXPECT_GT(counts[1], 0);
  EXPECT_GT(counts[2], 0);
}
