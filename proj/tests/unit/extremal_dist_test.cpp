#include <gtest/gtest.h>

#include <random>

#include "expected.hpp"
#include "oracles.hpp"
#include "wassarb/dual_core.hpp"
#include "wassarb/extremal_dist.hpp"
#include "wassarb/fixtures.hpp"
#include "wassarb/wasserstein.hpp"

namespace wassarb {
namespace {

TEST(Distribution, EmpiricalIsUniform) {
  const auto s = load_fixture("pairs");
  const auto d = empirical_distribution(s);
  EXPECT_EQ(d.size(), 12);
  EXPECT_NO_THROW(validate_pmf(d));
  EXPECT_DOUBLE_EQ(d.pmf(4), 1.0 / 12.0);
  EXPECT_EQ(d.origin[4], 4);
}

TEST(Distribution, ValidatePmfRejects) {
  auto d = make_distribution(Mat::Ones(2, 1), (Vec(2) << 0.5, 0.5).finished());
  d.pmf << 0.5, 0.6;
  EXPECT_THROW(validate_pmf(d), std::invalid_argument);
  d.pmf << 1.2, -0.2;
  EXPECT_THROW(validate_pmf(d), std::invalid_argument);
  EXPECT_THROW(make_distribution(Mat::Ones(2, 1), (Vec(2) << 0.5, 0.6).finished()), std::invalid_argument);
}

TEST(Greedy, ZeroRadiusIsEmpirical) {
  const auto s = load_fixture("pairs");
  const Vec w = (Vec(2) << 100.0, -67.5).finished();
  const auto d = best_case_distribution(w, s, 0.0);
  EXPECT_EQ(d.size(), 12);
  EXPECT_EQ(d.transport_cost, 0.0);
  EXPECT_TRUE(d.support.isApprox(s.scenarios()));
}

TEST(Greedy, BestCaseSplitsThirdScenario) {
  const auto s = load_fixture("pairs");
  const Vec w = Vec::Map(expected::kBestPmfPortfolio.data(), 2);
  const auto d = best_case_distribution(w, s, expected::kBestPmfDelta);
  ASSERT_EQ(d.size(), 13);
  EXPECT_EQ(d.split_origin, expected::kBestPmfSplitOrigin);
  EXPECT_NEAR(d.pmf(expected::kBestPmfSplitOrigin), expected::kBestPmfSplitStay, expected::kPmfTol);
  EXPECT_NEAR(d.pmf(12), expected::kBestPmfSplitMove, expected::kPmfTol);
  EXPECT_NEAR(d.pmf(12) + d.pmf(2), 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(d.budget_used, expected::kBestPmfDelta, 1e-9);
}

TEST(Greedy, WorstCaseMovesEveryWinner) {
  const auto s = load_fixture("pairs");
  const Vec w = Vec::Map(expected::kWorstPmfPortfolio.data(), 2);
  const auto d = worst_case_distribution(w, s, expected::kWorstPmfDelta);
  ASSERT_EQ(d.size(), 12);
  EXPECT_EQ(d.split_origin, -1);
  EXPECT_EQ(indicator_mass(d, w, true), 0.0);
  const int k = expected::kWorstPmfFirstMoved;
  EXPECT_GT(d.moved_distance(k), 0.0);
  EXPECT_NEAR(d.support(k, 0), expected::kWorstPmfLanding[0], 1.0);
  EXPECT_NEAR(d.support(k, 1), expected::kWorstPmfLanding[1], 1.0);
  for (int i = 0; i < k; ++i) EXPECT_EQ(d.moved_distance(i), 0.0);
}

TEST(Greedy, OvershootZeroStillKeepsSign) {
  const auto s = load_fixture("pairs");
  const Vec w = (Vec(2) << 100.0, -67.5).finished();
  const auto d = best_case_distribution(w, s, 50.0, GreedyOptions{0.0});
  EXPECT_EQ(indicator_mass(d, w, false), 1.0);
}

TEST(Greedy, RejectsBadInput) {
  const auto s = load_fixture("binomial");
  EXPECT_THROW(best_case_distribution(Vec::Zero(2), s, 1.0), std::invalid_argument);
  EXPECT_THROW(best_case_distribution(Vec::Ones(2), s, -1.0), std::invalid_argument);
  EXPECT_THROW(best_case_distribution(Vec::Ones(2), s, 1.0, GreedyOptions{-1.0}), std::invalid_argument);
}

// Expectation under the greedy distribution equals the dual value, and the
// distribution is within the ball.
TEST(Greedy, DualityOnRandomInstances) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 150; ++t) {
    const int n = 2 + t % 3, N = 2 + t % 7;
    const auto s = oracle::random_market(rng, n, N);
    const Vec w = oracle::random_zero_cost(rng, s.s0());
    const double delta = std::uniform_real_distribution<double>(0.0, 15.0)(rng);
    const auto emp = empirical_distribution(s);

    const auto b = best_case_distribution(w, s, delta);
    validate_pmf(b);
    EXPECT_NEAR(indicator_mass(b, w, false), dual_value_best(w, s, delta).value, 1e-9);
    EXPECT_LE(b.budget_used, delta + 1e-12);
    EXPECT_LE(b.transport_cost, delta * (1.0 + 1e-9) + 1e-12);
    EXPECT_LE(exact_discrete_ot(emp, b).cost, delta + 1e-7);

    const auto wc = worst_case_distribution(w, s, delta);
    validate_pmf(wc);
    EXPECT_NEAR(indicator_mass(wc, w, true), dual_value_worst(w, s, delta).value, 1e-9);
    EXPECT_LE(exact_discrete_ot(emp, wc).cost, delta + 1e-7);
  }
}

}  // namespace
}  // namespace wassarb
