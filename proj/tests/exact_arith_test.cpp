#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "liftproj/exact_linalg.hpp"
#include "liftproj/rational.hpp"

using namespace liftproj;

namespace {

Rational q(long p, long d = 1) { return frac(p, d); }

RMat third_matrix() {
  // 5x5: first row/column and diagonal 1/3, off-diagonal block 0.
  RMat y(5, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    y(0, i) = y(i, 0) = q(1, 3);
    y(i, i) = q(1, 3);
  }
  y(0, 0) = 1;
  return y;
}

}  // namespace

TEST(Rational, ParseForms) {
  EXPECT_EQ(parse_rational("3/6"), q(1, 2));
  EXPECT_EQ(parse_rational("-4"), q(-4));
  EXPECT_EQ(parse_rational("0.125"), q(1, 8));
  EXPECT_EQ(parse_rational("-1.5"), q(-3, 2));
  EXPECT_EQ(parse_rational("+2/-4"), q(-1, 2));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Rational, LowestTermsAfterArithmetic) {
  Rational a = q(1, 4) + q(1, 4);
  EXPECT_EQ(a.get_num(), 1);
  EXPECT_EQ(a.get_den(), 2);
  EXPECT_EQ(q(2, -4).get_den(), 2);
  EXPECT_EQ(q(2, -4).get_num(), -1);
}

TEST(Rational, RenderParseRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  for (int i = 0; i < 2000; ++i) {
    Rational x = frac(num(rng), den(rng));
        EXPECT_EQ(parse_rational(render(x)), x);
  }
}

TEST(Rational, PrimitiveRescales) {
  EXPECT_EQ(primitive({q(1, 2), q(-3, 4), 0}), make_rvec({2, -3, 0}));
  EXPECT_EQ(primitive({q(6), q(9)}), make_rvec({2, 3}));
  EXPECT_EQ(primitive(RVec(3)), RVec(3));
}

TEST(RMatTest, MatrixFileRoundTrip) {
  RMat y = third_matrix();
  std::istringstream in("# comment\n" + write_matrix(y));
  EXPECT_EQ(read_matrix(in), y);
  std::istringstream bad("2\n1 2 3\n");
  EXPECT_THROW(read_matrix(bad), ParseError);
}

TEST(PsdCheck, Identity) { EXPECT_TRUE(ldlt_psd_check(RMat::identity(3)).psd); }

TEST(PsdCheck, DiagOneMinusOne) {
  auto r = ldlt_psd_check(RMat::diagonal({q(1), q(-1)}));
  ASSERT_FALSE(r.psd);
  EXPECT_EQ(r.witness, make_rvec({0, 1}));
  EXPECT_EQ(r.value, -1);
}

TEST(PsdCheck, ThirdMatrixWitness) {
  RMat y = third_matrix();
  auto r = ldlt_psd_check(y);
  ASSERT_FALSE(r.psd);
  EXPECT_EQ(r.value, q(-1, 3));
  EXPECT_EQ(y.quadratic_form(r.witness), q(-1, 3));
  EXPECT_EQ(y.quadratic_form(make_rvec({1, -1, -1, -1, -1})), q(-1, 3));
}

TEST(PsdCheck, ZeroDiagonalBlock) {
  RMat m{{0, 2}, {2, 0}};
  auto r = ldlt_psd_check(m);
  ASSERT_FALSE(r.psd);
  EXPECT_LT(r.value, 0);
  EXPECT_EQ(m.quadratic_form(r.witness), r.value);
}

TEST(PsdCheck, RejectsNonSymmetric) {
  RMat m{{1, 2}, {0, 1}};
  EXPECT_THROW(ldlt_psd_check(m), DimensionError);
}

// Random Gram matrices are PSD; random symmetric matrices with a witness must
// evaluate negative exactly. PSD verdicts are probed by 1000 random vectors.
TEST(PsdCheck, RandomProperty) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> small(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 5;
    RMat m(n, n);
    if (trial % 2 == 0) {
      const std::size_t k = 1 + trial % n;
      for (std::size_t t = 0; t < k; ++t) {
        RVec v(n);
        for (auto& x : v) x = frac(small(rng), 1 + std::labs(small(rng)));
        m += RMat::outer(v, v);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = frac(small(rng), 3);
    }
    auto r = ldlt_psd_check(m);
    if (trial % 2 == 0) EXPECT_TRUE(r.psd);
    if (r.psd) {
      for (int s = 0; s < 1000; ++s) {
        RVec u(n);
        for (auto& x : u) x = frac(small(rng), 1 + std::labs(small(rng)));
        ASSERT_GE(m.quadratic_form(u), 0);
      }
    } else {
      ASSERT_LT(m.quadratic_form(r.witness), 0);
      EXPECT_EQ(m.quadratic_form(r.witness), r.value);
    }
  }
}

TEST(ExactLinalg, NullspaceAndRank) {
  std::vector<RVec> rows{make_rvec({1, 1, 0}), make_rvec({2, 2, 0})};
  EXPECT_EQ(rank_of(rows, 3), 1u);
  auto ns = nullspace(rows, 3);
  ASSERT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_EQ(dot(rows[0], v), 0);
  auto x = solve_square({make_rvec({2, 1}), make_rvec({1, 3})}, make_rvec({3, 5}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (RVec{q(4, 5), q(7, 5)}));
}
