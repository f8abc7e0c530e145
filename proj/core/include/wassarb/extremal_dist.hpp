#pragma once

#include "wassarb/distribution.hpp"

namespace wassarb {

struct GreedyOptions {
  // Moved points land at (1 + overshoot) x their hyperplane distance, plus an
  // absolute floor of 1e-13 x ||s_i|| so the sign of w.x survives rounding.
  double overshoot = 1e-9;
};

// Violated scenarios (w.s_i < 0) move onto the hyperplane, cheapest first,
// until N*delta is used up; the first unaffordable one is split.
DiscreteDistribution best_case_distribution(const Vec& w, const ScenarioSet& scen, double delta,
                                            const GreedyOptions& opt = {});

// Same greedy for the scenarios with w.s_i > 0, pushing them to the non-positive side.
DiscreteDistribution worst_case_distribution(const Vec& w, const ScenarioSet& scen, double delta,
                                             const GreedyOptions& opt = {});

}  // namespace wassarb
