#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "wassarb/extremal_dist.hpp"
#include "wassarb/fixtures.hpp"
#include "wassarb/radius.hpp"
#include "wassarb/wasserstein.hpp"

namespace wassarb {
namespace {

constexpr int kCases = 200;

TEST(Property, ValuesAreProbabilities) {
  std::mt19937_64 rng(100);
  for (int t = 0; t < kCases; ++t) {
    const auto s = oracle::random_market(rng, 2 + t % 4, 1 + t % 9);
    const Vec w = oracle::random_zero_cost(rng, s.s0());
    const double delta = std::uniform_real_distribution<double>(0.0, 50.0)(rng);
    const double b = dual_value_best(w, s, delta).value, wc = dual_value_worst(w, s, delta).value;
    EXPECT_GE(b, 0.0);
    EXPECT_LE(b, 1.0 + 1e-15);
    EXPECT_GE(wc, 0.0);
    EXPECT_LE(wc, 1.0);
    // moving mass to the favourable side can only help
    EXPECT_GE(b + 1e-12, dual_value_worst(w, s, 0.0).value);
  }
}

TEST(Property, ScalingThePortfolioChangesNothing) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < kCases; ++t) {
    const auto s = oracle::random_market(rng, 2 + t % 3, 2 + t % 7);
    const Vec w = oracle::random_zero_cost(rng, s.s0());
    const double delta = std::uniform_real_distribution<double>(0.0, 20.0)(rng);
    EXPECT_EQ(dual_value_best(w, s, delta).value, dual_value_best(2.0 * w, s, delta).value);
    EXPECT_EQ(dual_value_worst(w, s, delta).value, dual_value_worst(2.0 * w, s, delta).value);
  }
}

TEST(Property, MonotoneInRadiusForFixedPortfolio) {
  std::mt19937_64 rng(102);
  for (int t = 0; t < 50; ++t) {
    const auto s = oracle::random_market(rng, 3, 2 + t % 8);
    const Vec w = oracle::random_zero_cost(rng, s.s0());
    double pb = -1.0, pw = 2.0;
    for (double delta = 0.0; delta < 40.0; delta += 0.37) {
      const double b = dual_value_best(w, s, delta).value, wc = dual_value_worst(w, s, delta).value;
      EXPECT_GE(b, pb - 1e-12);
      EXPECT_LE(wc, pw + 1e-12);
      pb = b;
      pw = wc;
    }
  }
}

TEST(Property, ScenarioOrderDoesNotMatter) {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 50; ++t) {
    const auto s = oracle::random_market(rng, 3, 6);
    std::vector<int> perm{0, 1, 2, 3, 4, 5};
    std::shuffle(perm.begin(), perm.end(), rng);
    Mat shuffled(6, 3);
    for (int i = 0; i < 6; ++i) shuffled.row(i) = s.scenarios().row(perm[static_cast<size_t>(i)]);
    const ScenarioSet s2(s.asset_names(), s.s0(), shuffled);
    const Vec w = oracle::random_zero_cost(rng, s.s0());
    EXPECT_NEAR(dual_value_best(w, s, 3.0).value, dual_value_best(w, s2, 3.0).value, 1e-14);
    EXPECT_NEAR(dual_value_worst(w, s, 3.0).value, dual_value_worst(w, s2, 3.0).value, 1e-14);
  }
}

TEST(Property, OtIsAMetricOnSmallSupports) {
  std::mt19937_64 rng(104);
  for (int t = 0; t < 40; ++t) {
    auto mk = [&] {
      return make_distribution(oracle::random_matrix(rng, 3, 2, 0.0, 1.0), oracle::random_simplex(rng, 3));
    };
    const auto a = mk(), b = mk(), c = mk();
    const double ab = exact_discrete_ot(a, b).cost, ba = exact_discrete_ot(b, a).cost;
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_LE(ab, exact_discrete_ot(a, c).cost + exact_discrete_ot(c, b).cost + 1e-12);
    EXPECT_NEAR(exact_discrete_ot(a, a).cost, 0.0, 1e-14);
  }
}

// The basket fixtures carry only the printed 2019 rows, so they get property
// checks rather than reference values.
class BasketCurves : public ::testing::TestWithParam<std::string> {};

TEST_P(BasketCurves, SweepsAreMonotoneAndFeasible) {
  const auto s = load_fixture(GetParam());
  SearchConfig cfg;
  cfg.starts = 6;
  cfg.max_iters = 150;
  const std::vector<double> deltas{0.0, 1.0, 5.0, 20.0, 100.0};
  for (auto side : {RadiusSide::NAWeak, RadiusSide::NAStrong, RadiusSide::SAWorst}) {
    const auto c = sweep_curve(s, side, deltas, cfg);
    ASSERT_EQ(c.points.size(), deltas.size());
    EXPECT_TRUE(c.warnings.empty());
    for (size_t k = 1; k < c.points.size(); ++k) {
      if (is_worst_side(side))
        EXPECT_LE(c.points[k].value, c.points[k - 1].value);
      else
        EXPECT_GE(c.points[k].value, c.points[k - 1].value);
    }
    const auto cls = side == RadiusSide::NAWeak ? Admissibility::Weak : Admissibility::Strong;
    for (const auto& p : c.points) EXPECT_EQ(check_portfolio({p.w, cls, std::nullopt}, s.s0(), cfg.feas), "");
  }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, BasketCurves, ::testing::Values("equity_basket", "index_basket"));

}  // namespace
}  // namespace wassarb
