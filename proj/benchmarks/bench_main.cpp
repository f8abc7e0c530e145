#include <benchmark/benchmark.h>

#include <random>

#include "wassarb/extremal_dist.hpp"
#include "wassarb/fixtures.hpp"
#include "wassarb/nearest_na.hpp"
#include "wassarb/radius.hpp"
#include "wassarb/wasserstein.hpp"

using namespace wassarb;

namespace {

ScenarioSet random_market(int n, int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(50.0, 150.0);
  Mat s(N, n);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = u(rng);
  std::vector<std::string> names;
  for (int j = 0; j < n; ++j) names.push_back("a" + std::to_string(j));
  return ScenarioSet(names, s.colwise().mean().transpose(), s);
}

void BM_DualValue(benchmark::State& state) {
  const auto s = random_market(8, static_cast<int>(state.range(0)), 1);
  Vec w = Vec::LinSpaced(8, -1.0, 1.0);
  w -= (w.dot(s.s0()) / s.s0().squaredNorm()) * s.s0();
  for (auto _ : state) benchmark::DoNotOptimize(dual_value_best(w, s, 1.0).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DualValue)->RangeMultiplier(4)->Range(16, 16384)->Complexity();

void BM_GreedyDistribution(benchmark::State& state) {
  const auto s = random_market(4, static_cast<int>(state.range(0)), 2);
  Vec w = Vec::LinSpaced(4, -1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(best_case_distribution(w, s, 2.0).transport_cost);
}
BENCHMARK(BM_GreedyDistribution)->Range(16, 4096);

void BM_Maximin(benchmark::State& state) {
  const auto s = load_fixture(state.range(0) == 0 ? "pairs" : "equity_basket");
  SearchConfig cfg;
  cfg.threads = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(maximize_best_case(s, 5.0, Admissibility::Strong, std::nullopt, cfg).value);
}
BENCHMARK(BM_Maximin)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CriticalRadius(benchmark::State& state) {
  const auto s = load_fixture("pairs");
  RadiusConfig rc;
  rc.tol = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(critical_radius(s, RadiusSide::NAStrong, 1.0, rc).delta_star);
}
BENCHMARK(BM_CriticalRadius)->Unit(benchmark::kMillisecond);

void BM_ExactOT(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Mat a(n, 2), b(n, 2);
  for (int i = 0; i < n; ++i) a.row(i) << u(rng), u(rng), b.row(i) << u(rng), u(rng);
  const auto da = make_distribution(a, Vec::Constant(n, 1.0 / n));
  const auto db = make_distribution(b, Vec::Constant(n, 1.0 / n));
  for (auto _ : state) benchmark::DoNotOptimize(exact_discrete_ot(da, db).cost);
}
BENCHMARK(BM_ExactOT)->DenseRange(4, 28, 8);

void BM_Sinkhorn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Mat a(n, 2), b(n, 2);
  for (int i = 0; i < n; ++i) a.row(i) << u(rng), u(rng), b.row(i) << u(rng), u(rng);
  const auto da = make_distribution(a, Vec::Constant(n, 1.0 / n));
  const auto db = make_distribution(b, Vec::Constant(n, 1.0 / n));
  for (auto _ : state) benchmark::DoNotOptimize(sinkhorn(da, db, 1e-2).cost);
}
BENCHMARK(BM_Sinkhorn)->DenseRange(4, 28, 8);

void BM_TightBound(benchmark::State& state) {
  const auto prob = nearest_fixture(state.range(0) == 0 ? "russell_sp" : "index_basket");
  for (auto _ : state) benchmark::DoNotOptimize(tight_bound(prob, geometric_betas()).result.objective);
}
BENCHMARK(BM_TightBound)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
