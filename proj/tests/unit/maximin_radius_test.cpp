#include <gtest/gtest.h>

#include <cstdlib>

#include "expected.hpp"
#include "wassarb/errors.hpp"
#include "wassarb/fixtures.hpp"
#include "wassarb/radius.hpp"

namespace wassarb {
namespace {

SearchConfig quick() {
  SearchConfig c;
  c.starts = 8;
  c.max_iters = 200;
  return c;
}

TEST(SearchConfig, Validation) {
  SearchConfig c;
  EXPECT_NO_THROW(c.validate());
  c.starts = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.temp_end = 2.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.feas.epsilon = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(ThreadCount, EnvironmentOverride) {
  EXPECT_EQ(resolve_thread_count(3), 3);
  setenv("WASSARB_THREADS", "2", 1);
  EXPECT_EQ(resolve_thread_count(0), 2);
  unsetenv("WASSARB_THREADS");
  EXPECT_GE(resolve_thread_count(0), 1);
}

TEST(Smoothed, ApproachesExactAtLowTemperature) {
  const auto s = load_fixture("pairs");
  const Vec w = (Vec(2) << 100.0, -67.5).finished();
  for (double delta : {0.5, 5.0, 20.0}) {
    const double exact = dual_value_best(w, s, delta).value;
    EXPECT_NEAR(smoothed_dual_value(w, s, delta, Side::BestCase, 1e-9), exact, 1e-6);
    const double wc = dual_value_worst(w, s, delta).value;
    EXPECT_NEAR(smoothed_dual_value(w, s, delta, Side::WorstCase, 1e-9), wc, 1e-6);
  }
}

TEST(Maximin, ResultIsFeasibleAndExact) {
  const auto s = load_fixture("pairs");
  const auto cfg = quick();
  for (auto cls : {Admissibility::Weak, Admissibility::Strong}) {
    const auto r = maximize_best_case(s, 2.0, cls, std::nullopt, cfg);
    EXPECT_EQ(check_portfolio({r.w_opt, cls, std::nullopt}, s.s0(), cfg.feas), "");
    EXPECT_DOUBLE_EQ(r.value, dual_value_best(r.w_opt, s, 2.0).value);
  }
  const auto wc = maximize_worst_case(s, 2.0, std::nullopt, cfg);
  EXPECT_DOUBLE_EQ(wc.value, dual_value_worst(wc.w_opt, s, 2.0).value);
}

TEST(Maximin, DeterministicForSeedAndThreads) {
  const auto s = load_fixture("equity_basket");
  auto cfg = quick();
  cfg.threads = 1;
  const auto a = maximize_best_case(s, 1.0, Admissibility::Strong, std::nullopt, cfg);
  cfg.threads = 4;
  const auto b = maximize_best_case(s, 1.0, Admissibility::Strong, std::nullopt, cfg);
  EXPECT_EQ(a.value, b.value);
  EXPECT_TRUE(a.w_opt == b.w_opt);
}

TEST(Maximin, HotStartNeverLosesGround) {
  const auto s = load_fixture("pairs");
  auto cfg = quick();
  const auto first = maximize_best_case(s, 5.0, Admissibility::Strong, std::nullopt, cfg);
  cfg.starts = 1;
  cfg.hot_starts = {first.w_opt};
  const auto again = maximize_best_case(s, 5.0, Admissibility::Strong, std::nullopt, cfg);
  EXPECT_GE(again.value, first.value);
}

TEST(Maximin, RestrictionsRespected) {
  const auto s = load_fixture("equity_basket");
  PortfolioRestrictions r;
  r.short_sale_limits.assign(7, 0.0);
  r.short_sale_limits[0] = -50.0;
  r.cardinality = 3;
  auto cfg = quick();
  const auto res = maximize_best_case(s, 1.0, Admissibility::Strong, r, cfg);
  EXPECT_EQ(check_portfolio({res.w_opt, Admissibility::Strong, r}, s.s0(), cfg.feas), "");
}

TEST(Maximin, InfeasibleRestrictions) {
  const auto s = load_fixture("pairs");
  PortfolioRestrictions r;
  r.min_position = 10.0;
  r.max_position = 1.0;
  EXPECT_THROW(maximize_best_case(s, 1.0, Admissibility::Strong, r, quick()), Infeasible);
}

TEST(Maximin, TraceRecordsEveryStart) {
  const auto s = load_fixture("binomial");
  auto cfg = quick();
  cfg.keep_trace = true;
  const auto r = maximize_best_case(s, 0.5, Admissibility::Weak, std::nullopt, cfg);
  EXPECT_EQ(static_cast<int>(r.trace.size()), cfg.starts);
  EXPECT_GT(r.evaluations, 0);
}

TEST(Radius, ArgumentChecks) {
  const auto s = load_fixture("binomial");
  RadiusConfig rc;
  EXPECT_THROW(critical_radius(s, RadiusSide::NAWeak, 0.5, rc), std::invalid_argument);
  EXPECT_THROW(critical_radius(s, RadiusSide::SABest, 1.5, rc), std::invalid_argument);
  EXPECT_THROW(critical_radius(s, RadiusSide::SAWorst, 1.0, rc), std::invalid_argument);
  rc.tol = 0.0;
  EXPECT_THROW(critical_radius(s, RadiusSide::NAWeak, 1.0, rc), std::invalid_argument);
}

TEST(Radius, BracketHoldsThreshold) {
  const auto s = load_fixture("binomial");
  RadiusConfig rc;
  rc.search = quick();
  rc.tol = 0.01;
  const auto r = critical_radius(s, RadiusSide::NAStrong, 1.0, rc);
  EXPECT_TRUE(r.attained);
  EXPECT_LE(r.hi - r.lo, rc.tol * r.hi + 1e-12);
  EXPECT_GE(r.delta_star, expected::kBinomialRadiusLo);
  EXPECT_LE(r.delta_star, expected::kBinomialRadiusHi);
  EXPECT_GE(dual_value_best(r.w_at_star, s, r.delta_star).value, 1.0 - 1e-12);
}

TEST(Radius, UnattainedWithinCap) {
  const auto s = load_fixture("binomial");
  RadiusConfig rc;
  rc.search = quick();
  rc.delta_max = 0.5;
  const auto r = critical_radius(s, RadiusSide::NAStrong, 1.0, rc);
  EXPECT_FALSE(r.attained);
}

TEST(Curve, RejectsUnsortedRadii) {
  const auto s = load_fixture("binomial");
  EXPECT_THROW(sweep_curve(s, RadiusSide::NAWeak, {}, quick()), std::invalid_argument);
  EXPECT_THROW(sweep_curve(s, RadiusSide::NAWeak, {1.0, 0.5}, quick()), std::invalid_argument);
}

}  // namespace
}  // namespace wassarb
