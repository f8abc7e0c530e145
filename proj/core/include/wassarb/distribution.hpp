#pragma once

#include <string>
#include <vector>

#include "wassarb/market.hpp"

namespace wassarb {

// Weighted point cloud; support points are rows.
struct DiscreteDistribution {
  Mat support;
  Vec pmf;
  // origin[k]: index of the empirical scenario point k came from (-1 if none)
  std::vector<int> origin;
  // distance point k was moved from its origin (0 for unmoved points)
  Vec moved_distance;
  // sum of mass x distance actually moved
  double transport_cost = 0.0;
  // sum of mass x hyperplane distance, the greedy's own budget accounting
  double budget_used = 0.0;
  int split_origin = -1;
  std::string split_rule;

  int size() const { return static_cast<int>(pmf.size()); }
};

DiscreteDistribution empirical_distribution(const ScenarioSet& scen);
DiscreteDistribution make_distribution(Mat support, Vec pmf);

// Throws std::invalid_argument unless pmf >= 0 and sums to 1 within tol.
void validate_pmf(const DiscreteDistribution& d, double tol = 1e-9);

// Probability of {w.x >= 0} (strict=false) or {w.x > 0} (strict=true).
double indicator_mass(const DiscreteDistribution& d, const Vec& w, bool strict);

}  // namespace wassarb
