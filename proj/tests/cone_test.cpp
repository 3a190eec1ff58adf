#include <gtest/gtest.h>

#include <sstream>

#include "liftproj/cone.hpp"

using namespace liftproj;

namespace {

Rational q(long p, long d = 1) { return frac(p, d); }

RVec half(std::size_t d) {
  RVec x(d + 1, q(1, 2));
  x[0] = 1;
  return x;
}

bool has_row(const HCone& k, const RVec& r) {
  for (const auto& a : k.rows())
    if (a == primitive(r)) return true;
  return false;
}

}  // namespace

TEST(Homogenize, BoxOnly) {
  HCone k = homogenize({}, {}, 2);
  EXPECT_EQ(k, gen_box(2));
  EXPECT_EQ(k.rows().size(), 4u);
}

TEST(Homogenize, HalfspaceRow) {
  HCone k = homogenize({{q(1), q(1), q(1)}}, {q(3, 2)}, 3);
  EXPECT_TRUE(has_row(k, {q(3, 2), q(-1), q(-1), q(-1)}));
  EXPECT_EQ(k.extra_rows().size(), 1u);
}

TEST(Homogenize, Example2Rows) {
  HCone k = gen_example2(4);
  EXPECT_EQ(k.extra_rows().size(), 4u);
  EXPECT_TRUE(has_row(k, {q(2), q(-1), q(-1), q(-1), q(0)}));
}

TEST(FaceRestrict, EmptyFaceKeepsCone) {
  HCone k = gen_example2(4);
  EXPECT_EQ(face_restrict(k, {}), k);
}

TEST(FaceRestrict, OneCoordinateAtOne) {
  HCone f = face_restrict(gen_example2(4), {{}, {1}});
  EXPECT_TRUE(slice_member(f, {q(1), q(1), q(1, 2), q(1, 2), q(0)}));
  EXPECT_FALSE(slice_member(f, {q(1), q(0), q(0), q(0), q(0)}));
  EXPECT_FALSE(slice_member(f, {q(1), q(1), q(1), q(1, 2), q(0)}));
  EXPECT_EQ(*slice_optimum(f, {q(0), q(0), q(1), q(1), q(1)}), q(3, 2));
}

TEST(FaceRestrict, ConflictingFaceIsZero) {
  HCone f = face_restrict(gen_box(2), {{1}, {1}});
  EXPECT_FALSE(slice_optimum(f, {q(0), q(1), q(0)}).has_value());
  EXPECT_TRUE(slice_member(f, {q(0), q(0), q(0)}));
}

TEST(Flip, IdentityKeepsCone) {
  HCone k = gen_frac(5, cycle_graph(5));
  EXPECT_EQ(flip(k, {}), k);
}

TEST(Flip, CrossIsSymmetric) {
  HCone k = gen_cross(3, 2);
  EXPECT_EQ(flip(k, {1}), k);
  EXPECT_EQ(flip(k, {1, 3}), k);
  EXPECT_EQ(flip(k, {1, 2, 3}), k);
}

TEST(Flip, EdgeRowBecomesOrder) {
  HCone f = flip(gen_frac(2, {{1, 2}}), {1});
  EXPECT_TRUE(has_row(f, {q(0), q(1), q(-1)}));
}

TEST(Flip, Involution) {
  HCone k = gen_example2(4);
  EXPECT_EQ(flip(flip(k, {2, 4}), {2, 4}), k);
}

TEST(Flip, PointsFollowCone) {
  HCone k = gen_frac(3, {{1, 2}, {2, 3}});
  RVec x{q(1), q(1), q(0), q(1, 3)};
  ASSERT_TRUE(slice_member(k, x));
  EXPECT_TRUE(slice_member(flip(k, {2}), flip_point(x, {2})));
}

TEST(SliceMember, Example2) {
  HCone k = gen_example2(4);
  EXPECT_TRUE(slice_member(k, half(4)));
  RVec e(5, q(1));
  EXPECT_FALSE(slice_member(k, e));
  EXPECT_TRUE(slice_member(k, RVec(5)));
}

TEST(ConeInclude, Reflexive) {
  for (const auto& k : {gen_example2(4), gen_cross(3, 2), gen_matching(4), gen_box(3)}) EXPECT_TRUE(cone_include(k, k));
}

TEST(ConeInclude, SmallerBallInside) {
  EXPECT_TRUE(cone_include(gen_cross(3, 1), gen_cross(3, 2)));
  EXPECT_FALSE(cone_include(gen_cross(3, 2), gen_cross(3, 1)));
}

TEST(ConeInclude, Example2NotInsideHull) {
  HCone k = gen_example2(4);
  HCone h = integral_hull(k);
  EXPECT_TRUE(cone_include(h, k));
  EXPECT_FALSE(cone_include(k, h));
  // the LP optimum of the sum over the cone exceeds the hull bound
  RVec s(5, q(1));
  s[0] = 0;
  EXPECT_EQ(*slice_optimum(k, s), q(8, 3));
}

TEST(IntegralHull, Example2) {
  HCone h = integral_hull(gen_example2(4));
  EXPECT_EQ(h, HCone(4, {{q(2), q(-1), q(-1), q(-1), q(-1)}}));
}

TEST(IntegralHull, CrossIsEmpty) {
  HCone h = integral_hull(gen_cross(3, 2));
  EXPECT_TRUE(integer_points(gen_cross(3, 2)).empty());
  EXPECT_FALSE(slice_optimum(h, {q(0), q(1), q(0), q(0)}).has_value());
}

TEST(IntegralHull, BoxAndFixedPoint) {
  EXPECT_EQ(integral_hull(gen_box(3)), gen_box(3));
  HCone h = integral_hull(gen_frac(5, cycle_graph(5)));
  EXPECT_EQ(integral_hull(h), h);
}

TEST(Generators, RowCounts) {
  HCone c5 = gen_frac(5, cycle_graph(5));
  EXPECT_EQ(c5.d(), 5u);
  EXPECT_EQ(c5.extra_rows().size(), 5u);
  HCone m = gen_matching(4);
  EXPECT_EQ(m.d(), 6u);
  EXPECT_EQ(m.extra_rows().size(), 4u);
  EXPECT_EQ(gen_cross(3, 2).extra_rows().size(), 8u);
  EXPECT_EQ(gen_box(4).rows().size(), 8u);
}

TEST(Generators, DomainErrors) {
  EXPECT_THROW(gen_example2(5), DomainError);
  EXPECT_THROW(gen_cross(3, 4), DomainError);
  EXPECT_THROW(gen_frac(3, {{1, 4}}), DimensionError);
}

TEST(ConeFile, RoundTrip) {
  for (const auto& k : {gen_example2(4), gen_cross(3, 2), gen_frac(4, complete_graph(4))}) {
    std::istringstream in(write_cone(k));
    EXPECT_EQ(read_cone(in), k);
  }
}

TEST(ConeFile, CommentsAndFractions) {
  std::istringstream in("# a cone\nd 2\nm 5\n3/2 -1 -1 # trailing\n0 1 0\n1 -1 0\n0 0 1\n1 0 -1\n");
  HCone k = read_cone(in);
  EXPECT_EQ(k.d(), 2u);
  EXPECT_TRUE(has_row(k, {q(3, 2), q(-1), q(-1)}));
}

TEST(ConeFile, MissingBoxRowRejected) {
  std::istringstream in("d 2\nm 1\n3/2 -1 -1\n");
  EXPECT_THROW(read_cone(in), ParseError);
}
