#include <gtest/gtest.h>

#include <map>
#include <tuple>

#include "liftproj/lifted.hpp"
#include "liftproj/lsplus.hpp"
#include "liftproj/recurrence.hpp"

using namespace liftproj;

namespace {

Rational q(long p, long d = 1) { return frac(p, d); }

// Plain memoized recursion, written independently of the layered sweep.
class Oracle {
 public:
  Oracle(int d, bool plus) : d_(d), plus_(plus) {}

  Rational operator()(int r, int n0, int n1) {
    const int h = d_ / 2;
    auto key = std::make_tuple(r, n0, n1);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Rational v;
    if (n0 + n1 == d_) {
      v = 1;
    } else if (r == 0) {
      v = n0 <= h - 1 ? Rational(q(h - n1, h + 1 - n1)) : Rational(1);
    } else if (n1 == h) {
      v = 0;
    } else {
      Rational a = (*this)(r - 1, n0 + 1, n1);
      Rational b = (*this)(r - 1, n0, n1 + 1);
      v = a / (1 - b + a);
      if (plus_) {
        const int p = d_ - n0 - n1;
        Rational second = ((p - 1) * b + 1) / p;
        if (second < v) v = second;
      }
    }
    memo_[key] = v;
    return v;
  }

 private:
  int d_;
  bool plus_;
  std::map<std::tuple<int, int, int>, Rational> memo_;
};

RVec ones(std::size_t d) {
  RVec c(d + 1, q(1));
  c[0] = 0;
  return c;
}

}  // namespace

TEST(CValue, BaseLayer) {
  EXPECT_EQ(c_value(10, 0, 0, 0), q(5, 6));
  EXPECT_EQ(c_value(4, 0, 3, 0), q(1));
  EXPECT_EQ(c_value(4, 0, 0, 2), q(0));
}

TEST(CValue, HandEvaluated) {
  EXPECT_EQ(c_value(4, 1, 1, 0), q(2, 3));
  EXPECT_EQ(c_value(4, 1, 0, 1), q(1, 3));
  EXPECT_EQ(c_value(4, 2, 0, 0), q(1, 2));
  EXPECT_EQ(c_value(4, 1, 0, 0), q(4, 7));
}

TEST(CPlusValue, HandEvaluated) {
  EXPECT_EQ(cplus_value(4, 1, 0, 0), q(4, 7));
  EXPECT_EQ(cplus_value(4, 2, 0, 0), q(1, 2));
}

TEST(CPlusValue, BaseLayerAgrees) {
  for (int d : {4, 6, 10})
    for (int n1 = 0; n1 <= d / 2; ++n1)
      for (int n0 = 0; n0 + n1 <= d; ++n0) EXPECT_EQ(cplus_value(d, 0, n0, n1), c_value(d, 0, n0, n1));
}

TEST(CValue, MatchesOracle) {
  for (int d : {4, 6, 8, 10}) {
    Oracle c(d, false), cp(d, true);
    for (int r = 0; r <= d; ++r)
      for (int n1 = 0; n1 <= d / 2; ++n1)
        for (int n0 = 0; n0 + n1 <= std::min(d, 4); ++n0) {
          EXPECT_EQ(c_value(d, r, n0, n1), c(r, n0, n1)) << d << " " << r << " " << n0 << " " << n1;
          EXPECT_EQ(cplus_value(d, r, n0, n1), cp(r, n0, n1)) << d << " " << r << " " << n0 << " " << n1;
        }
  }
}

TEST(CValue, ValuesInUnitIntervalAndOrdered) {
  for (int d : {6, 8, 12}) {
    for (int r = 0; r < d; ++r) {
      Rational c = c_value(d, r, 0, 0), cp = cplus_value(d, r, 0, 0);
      EXPECT_GE(cp, q(1, 2));
      EXPECT_LE(c, q(1));
      EXPECT_LE(cp, c);
      EXPECT_LE(c_value(d, r + 1, 0, 0), c);
      EXPECT_LE(cplus_value(d, r + 1, 0, 0), cp);
    }
  }
}

TEST(CValue, AgreesWithLiftedLp) {
  // sum over the face with n0 zeros and n1 ones is n1 + (d - n0 - n1) c
  const int d = 4;
  HCone k = gen_example2(d);
  for (int r = 1; r <= 2; ++r)
    for (int n0 = 0; n0 <= 1; ++n0)
      for (int n1 = 0; n1 <= 1; ++n1) {
        FaceSpec f;
        for (int i = 0; i < n0; ++i) f.zeros.push_back(static_cast<std::size_t>(1 + i));
        for (int i = 0; i < n1; ++i) f.ones.push_back(static_cast<std::size_t>(d - i));
        auto v = n_optimize(face_restrict(k, f), static_cast<std::size_t>(r), OpKind::N, ones(d));
        ASSERT_TRUE(v.has_value());
        EXPECT_EQ(*v, n1 + (d - n0 - n1) * c_value(d, r, n0, n1)) << r << " " << n0 << " " << n1;
      }
  EXPECT_EQ(*n_optimize(gen_example2(6), 1, OpKind::N, ones(6)), 6 * c_value(6, 1, 0, 0));
}

TEST(CPlusValue, AgreesWithSdp) {
  NPlusResult r = nplus_optimize(gen_example2(6), 1, ones(6));
  ASSERT_EQ(r.status, SdpStatus::Optimal);
  EXPECT_NEAR(r.value, 6 * to_double(cplus_value(6, 1, 0, 0)), 1e-4);
}

TEST(Example2Rank, SmallCases) {
  EXPECT_EQ(example2_rank(4, RecKind::C), 2);
  EXPECT_EQ(example2_rank(6, RecKind::C), 4);
  EXPECT_EQ(example2_rank(4, RecKind::CPlus), 2);
  EXPECT_EQ(example2_rank(6, RecKind::CPlus), 3);
  EXPECT_EQ(example2_rank(8, RecKind::CPlus), 4);
  EXPECT_GT(cplus_value(8, 3, 0, 0), q(1, 2));
}

TEST(Example2Rank, GeneralPattern) {
  for (int d = 4; d <= 16; d += 2) {
    EXPECT_EQ(example2_rank(d, RecKind::C), d - 2) << d;
    EXPECT_EQ(example2_rank(d, RecKind::CPlus), d / 2) << d;
  }
}

TEST(ClosedForm, Matches) {
  ClosedFormReport r4 = closed_form_check(4);
  EXPECT_TRUE(r4.matches);
  EXPECT_EQ(r4.expected, q(4, 7));
  ClosedFormReport r6 = closed_form_check(6);
  EXPECT_TRUE(r6.matches);
  EXPECT_EQ(r6.value, q(1, 2) + q(1, 24));
  ClosedFormReport r20 = closed_form_check(20);
  EXPECT_TRUE(r20.matches);
  EXPECT_EQ(r20.value, q(1, 2) + q(1, 94));
}

TEST(Appendix, NoViolations) {
  for (int d : {4, 8, 12}) {
    AppendixReport rep = appendix_suite(d, d);
    EXPECT_TRUE(rep.ok()) << d << ": " << (rep.violations.empty() ? "" : rep.violations.front());
    EXPECT_GT(rep.checks, 0u);
  }
}

TEST(Figure3, Rows) {
  auto rows = figure3_data(10);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows.back().c_plus, q(1, 2));
  // the bound is met with equality at r = 0 and is strict afterwards
  EXPECT_EQ(rows.front().c_plus, rows.front().bound);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GT(rows[i].c_plus, rows[i].bound) << i;
    EXPECT_LE(rows[i].c_plus, rows[i].c);
  }
}

TEST(Recurrence, DomainErrors) {
  EXPECT_THROW(c_value(5, 0, 0, 0), DomainError);
  EXPECT_THROW(c_value(4, 0, 0, 3), DomainError);
  EXPECT_THROW(cplus_value(4, -1, 0, 0), DomainError);
  EXPECT_THROW(example2_rank(2, RecKind::C), DomainError);
}
