#pragma once

#include <optional>
#include <vector>

#include "wassarb/market.hpp"

namespace wassarb {

enum class ShortSales { Allowed, Forbidden };

struct NearestNAProblem {
  Vec p;  // time-0 prices, length n
  Mat X;  // payoffs, n assets x s states
  double r0 = 0.0;
  ShortSales mode = ShortSales::Allowed;
  bool complete_market = false;

  void validate() const;
};

struct NearestNAConfig {
  int max_iters = 400000;
  double q_floor = 1e-6;       // strict positivity of q when short sales are forbidden
  double cond_limit = 1e10;    // rank check in complete-market mode
};

struct NearestNAResult {
  Mat X_tilde;
  Vec q;
  double beta = 0.0;
  double objective = 0.0;  // ||X - X~||_F + beta * residual
  double distance = 0.0;   // ||X - X~||_F
  double residual = 0.0;   // ||p - X~ q||^2, or ||(X~ q - (1+r0) p)^+||^2
  int iterations = 0;
  bool converged = false;
  bool rank_ok = true;     // complete-market mode only
};

struct BetaStep {
  double beta;
  double objective;
  double distance;
  double residual;
  int iterations;
};

// Local minimum of the penalty relaxation for one beta. The perturbation for a
// fixed q is solved in closed form; q then follows projected descent.
NearestNAResult solve_relaxation(const NearestNAProblem& prob, double beta, const NearestNAConfig& cfg = {},
                                 const std::optional<Vec>& q_start = std::nullopt);

struct TightBoundResult {
  NearestNAResult result;
  std::vector<BetaStep> sweep;
  bool plateau_reached = false;
  std::vector<std::string> warnings;
};

// Warm-started sweep over an increasing beta schedule; stops at the first beta
// whose objective differs from the previous one by less than
// plateau_tol * max(1, |previous|).
TightBoundResult tight_bound(const NearestNAProblem& prob, const std::vector<double>& betas, double plateau_tol = 1e-6,
                             const NearestNAConfig& cfg = {});

std::vector<double> geometric_betas(double first = 1.0, double last = 1024.0, double factor = 2.0);

}  // namespace wassarb
