#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wassarb/dual_core.hpp"

namespace wassarb {

struct SearchConfig {
  int starts = 16;
  int max_iters = 400;
  // Logistic relaxation of the sign indicators. Temperatures are relative to
  // the scenario dispersion and decay geometrically over the iterations.
  double temp_start = 1.0;
  double temp_end = 1e-4;
  double expand = 2.0;
  double shrink = 0.5;
  int polish_iters = 200;
  std::uint64_t seed = 1;
  std::vector<Vec> hot_starts;
  FeasibilityConstants feas;
  int threads = 0;  // 0: WASSARB_THREADS or hardware concurrency
  bool keep_trace = false;

  void validate() const;
};

struct StartTrace {
  int start_index;
  bool hot;
  double value;
  long evaluations;
};

struct MaximinResult {
  Vec w_opt;
  double value = 0.0;
  DualEvaluation eval;
  Admissibility admissibility = Admissibility::Strong;
  Side side = Side::BestCase;
  long evaluations = 0;
  std::vector<StartTrace> trace;
};

MaximinResult maximize_best_case(const ScenarioSet& scen, double delta, Admissibility cls,
                                 const std::optional<PortfolioRestrictions>& restrictions, const SearchConfig& cfg);

MaximinResult maximize_worst_case(const ScenarioSet& scen, double delta,
                                  const std::optional<PortfolioRestrictions>& restrictions, const SearchConfig& cfg);

// Smoothed surrogate of the dual value (used by the search, exposed for tests).
// Indicators 1{d >= 0} on signed distances d become logistic(d / temperature).
double smoothed_dual_value(const Vec& w, const ScenarioSet& scen, double delta, Side side, double temperature);

int resolve_thread_count(int requested);

}  // namespace wassarb
