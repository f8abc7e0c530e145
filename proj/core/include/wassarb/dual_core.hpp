#pragma once

#include <vector>

#include "wassarb/market.hpp"

namespace wassarb {

enum class Side { BestCase, WorstCase };

struct DualEvaluation {
  double lambda_star = 0.0;
  double value = 0.0;
  double k0 = 0.0;  // fraction of scenarios on the favourable side
  double k1 = 0.0;  // partial-transport term (worst case: the K1^wc sum, <= 0)
  Vec costs;
  Side side = Side::BestCase;
};

// Per-scenario inner terms.
double psi_best(double lambda, bool satisfied, double c);
double psi_worst(double lambda, bool satisfied_leq, double c);

// Linear search over {0} u {1/c_i} for the masked scenarios.
// mask[i] marks the scenarios that pay transport: w.s_i < 0 (best case)
// or w.s_i > 0 (worst case).
double lambda_star_best(const Vec& costs, const std::vector<bool>& violated, int N, double delta);
double lambda_star_worst(const Vec& costs, const std::vector<bool>& satisfied_gt, int N, double delta);

// H(lambda) and H^wc(lambda) for a fixed lambda; used by oracles and tests.
double dual_objective_best(double lambda, const Vec& margins, const Vec& costs, double delta);
double dual_objective_worst(double lambda, const Vec& margins, const Vec& costs, double delta);

// Only requires w != 0; admissibility is the caller's business.
DualEvaluation dual_value_best(const Vec& w, const ScenarioSet& scen, double delta);
DualEvaluation dual_value_worst(const Vec& w, const ScenarioSet& scen, double delta);

// Validates the portfolio against its class first (InvalidPortfolio on failure).
DualEvaluation dual_value_best(const Portfolio& p, const ScenarioSet& scen, double delta,
                               const FeasibilityConstants& fc = {});
DualEvaluation dual_value_worst(const Portfolio& p, const ScenarioSet& scen, double delta,
                                const FeasibilityConstants& fc = {});

}  // namespace wassarb
