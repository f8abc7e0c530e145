#pragma once

#include <vector>

#include "wassarb/distribution.hpp"

namespace wassarb {

enum class OTMethod { Exact, Sinkhorn, IPOT };

struct TransportPlan {
  Mat coupling;
  double cost = 0.0;
  int iterations = 0;
  OTMethod method = OTMethod::Exact;
  double parameter = 0.0;  // epsilon for Sinkhorn, beta for IPOT
  bool converged = true;
};

// Ground cost ||x_i - y_j||^p between support points.
Mat ground_cost(const DiscreteDistribution& a, const DiscreteDistribution& b, double p = 1.0);

// Transportation simplex; meant for small supports (<= 30 points).
TransportPlan exact_discrete_ot(const DiscreteDistribution& source, const DiscreteDistribution& target,
                                double p = 1.0);
TransportPlan exact_ot(const Vec& a, const Vec& b, const Mat& cost);

// (sum_i |X_(i) - Y_(i)|^p)^(1/p) over order statistics, no 1/N factor.
// With uniform weights the LP value is univariate_ot^p / N.
double univariate_ot(std::vector<double> x, std::vector<double> y, double p = 1.0);

struct EntropicOptions {
  int max_iters = 100000;
  double tol = 1e-9;  // L1 marginal violation before rounding
};

TransportPlan sinkhorn(const DiscreteDistribution& source, const DiscreteDistribution& target, double epsilon,
                       const EntropicOptions& opt = {}, double p = 1.0);
TransportPlan sinkhorn(const Vec& a, const Vec& b, const Mat& cost, double epsilon, const EntropicOptions& opt = {});

struct IpotOptions {
  int inner_iters = 1;
  int max_iters = 20000;
  double tol = 1e-10;  // change in cost between outer iterations
};

TransportPlan ipot(const DiscreteDistribution& source, const DiscreteDistribution& target, double beta,
                   const IpotOptions& opt = {}, double p = 1.0);
TransportPlan ipot(const Vec& a, const Vec& b, const Mat& cost, double beta, const IpotOptions& opt = {});

// Moves an approximately feasible plan onto the transport polytope of (a, b).
Mat round_to_marginals(const Mat& plan, const Vec& a, const Vec& b);

}  // namespace wassarb
