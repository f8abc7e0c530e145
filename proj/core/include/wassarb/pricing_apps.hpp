#pragma once

#include <vector>

#include "wassarb/market.hpp"

namespace wassarb {

// Radius is measured with the quadratic cost (x - y)^2 / 2, so it is not on the
// same scale as the order-1 radii used by the arbitrage solvers.
struct RobustCallSpec {
  std::vector<double> samples;
  double strike = 0.0;
  double delta_alpha = 0.0;
};

struct RobustCallResult {
  double price = 0.0;
  double lambda_star = 0.0;  // +inf at zero radius
};

// G(lambda) = lambda * delta + mean (s_i - k + 1/(2 lambda))^+
double robust_call_objective(const RobustCallSpec& spec, double lambda);
RobustCallResult robust_call(const RobustCallSpec& spec);
double empirical_call(const std::vector<double>& samples, double strike);

struct MarkowitzSpec {
  Mat returns;  // N samples x d assets
  Vec phi;
  double delta = 0.0;
  double p_norm = 2.0;  // may be +inf
};

// (sqrt(phi' S phi) + sqrt(delta) ||phi||_p)^2 with S the covariance under the
// empirical measure (1/N normalization).
double robust_markowitz_objective(const MarkowitzSpec& spec);

}  // namespace wassarb
