#include <gtest/gtest.h>

#include "liftproj/properties.hpp"

using namespace liftproj;

namespace {

constexpr std::size_t kInstances = 20;

class PropertySuite : public ::testing::TestWithParam<std::string> {};

}  // namespace

TEST_P(PropertySuite, NoViolations) {
  for (std::uint64_t seed : {1u, 2u}) {
    PropertyReport r = run_property(GetParam(), seed, kInstances);
    EXPECT_GE(r.instances, kInstances);
    EXPECT_GT(r.nontrivial, 0u) << "seed " << seed;
    EXPECT_TRUE(r.ok()) << "seed " << seed << ": " << (r.violations.empty() ? "" : r.violations.front());
  }
}

INSTANTIATE_TEST_SUITE_P(All, PropertySuite, ::testing::ValuesIn(property_names()),
                         [](const auto& info) { return info.param; });

TEST(PropertySuite, UnknownNameRejected) { EXPECT_THROW(run_property("no_such_suite", 1, 1), DomainError); }
