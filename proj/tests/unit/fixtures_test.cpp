#include <gtest/gtest.h>

#include "wassarb/fixtures.hpp"

namespace wassarb {
namespace {

// Pinned so that an edit to the embedded data shows up as a test failure.
TEST(Fixtures, HashesArePinned) {
  EXPECT_EQ(fnv1a64(scenario_fixture("binomial").csv), 0xf3d6de52337197e8ULL);
  EXPECT_EQ(fnv1a64(scenario_fixture("pairs").csv), 0xccf6976f56e6be6eULL);
  EXPECT_EQ(fnv1a64(scenario_fixture("equity_basket").csv), 0xdb693c0f97daa809ULL);
  EXPECT_EQ(fnv1a64(scenario_fixture("index_basket").csv), 0x045ee6c35050fc4cULL);
}

TEST(Fixtures, Shapes) {
  EXPECT_EQ(load_fixture("binomial").n_scenarios(), 2);
  EXPECT_EQ(load_fixture("pairs").n_scenarios(), 12);
  EXPECT_EQ(load_fixture("pairs").n_assets(), 2);
  EXPECT_EQ(load_fixture("equity_basket").n_assets(), 7);
  EXPECT_EQ(load_fixture("index_basket").n_assets(), 5);
  EXPECT_THROW(load_fixture("nope"), std::invalid_argument);
}

TEST(Fixtures, NearestProblemsAreWellFormed) {
  for (const auto& name : nearest_fixture_names()) {
    const auto p = nearest_fixture(name);
    EXPECT_NO_THROW(p.validate()) << name;
  }
  EXPECT_THROW(nearest_fixture("nope"), std::invalid_argument);
}

TEST(Fnv, KnownVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace wassarb
