#include "wassarb/dual_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wassarb {

double psi_best(double lambda, bool satisfied, double c) {
  if (satisfied) return 1.0;
  return std::max(0.0, 1.0 - lambda * c);
}

double psi_worst(double lambda, bool satisfied_leq, double c) {
  if (satisfied_leq) return 0.0;
  return std::max(0.0, 1.0 - lambda * c) - 1.0;
}

namespace {

double lambda_search(const Vec& costs, const std::vector<bool>& mask, int N, double delta) {
  if (delta < 0.0 || !std::isfinite(delta)) throw std::invalid_argument("radius must be finite and >= 0");
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(mask.size()); ++i)
    if (mask[static_cast<size_t>(i)] && costs(i) > 0.0) idx.push_back(i);
  if (idx.empty()) return 0.0;
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return costs(a) < costs(b); });

  const double budget = N * delta;
  double prefix = 0.0;
  for (int i : idx) {
    prefix += costs(i);
    if (prefix >= budget) return 1.0 / costs(i);
  }
  return 0.0;
}

std::vector<bool> sign_mask(const Vec& margins, bool positive) {
  std::vector<bool> m(static_cast<size_t>(margins.size()));
  for (Eigen::Index i = 0; i < margins.size(); ++i)
    m[static_cast<size_t>(i)] = positive ? margins(i) > 0.0 : margins(i) < 0.0;
  return m;
}

}  // namespace

double lambda_star_best(const Vec& costs, const std::vector<bool>& violated, int N, double delta) {
  return lambda_search(costs, violated, N, delta);
}

double lambda_star_worst(const Vec& costs, const std::vector<bool>& satisfied_gt, int N, double delta) {
  return lambda_search(costs, satisfied_gt, N, delta);
}

double dual_objective_best(double lambda, const Vec& margins, const Vec& costs, double delta) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) sum += psi_best(lambda, margins(i) >= 0.0, costs(i));
  return lambda * delta + sum / static_cast<double>(margins.size());
}

double dual_objective_worst(double lambda, const Vec& margins, const Vec& costs, double delta) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) sum += psi_worst(lambda, margins(i) <= 0.0, costs(i));
  return lambda * delta + sum / static_cast<double>(margins.size());
}

DualEvaluation dual_value_best(const Vec& w, const ScenarioSet& scen, double delta) {
  DualEvaluation ev;
  ev.side = Side::BestCase;
  ev.costs = scenario_costs(w, scen);
  const Vec margins = scen.scenarios() * w;
  const int N = scen.n_scenarios();
  ev.lambda_star = lambda_star_best(ev.costs, sign_mask(margins, false), N, delta);

  // counts first, then one division, so that a full-support outcome is exactly 1
  double satisfied = 0.0, partial = 0.0;
  for (int i = 0; i < N; ++i) {
    if (margins(i) >= 0.0)
      satisfied += 1.0;
    else
      partial += psi_best(ev.lambda_star, false, ev.costs(i));
  }
  ev.k0 = satisfied / N;
  ev.k1 = partial / N;
  ev.value = ev.lambda_star * delta + (satisfied + partial) / N;
  return ev;
}

DualEvaluation dual_value_worst(const Vec& w, const ScenarioSet& scen, double delta) {
  DualEvaluation ev;
  ev.side = Side::WorstCase;
  ev.costs = scenario_costs(w, scen);
  const Vec margins = scen.scenarios() * w;
  const int N = scen.n_scenarios();
  ev.lambda_star = lambda_star_worst(ev.costs, sign_mask(margins, true), N, delta);

  double leq = 0.0, paid = 0.0;
  for (int i = 0; i < N; ++i) {
    if (margins(i) <= 0.0)
      leq += 1.0;
    else
      paid += 1.0 - std::max(0.0, 1.0 - ev.lambda_star * ev.costs(i));
  }
  ev.k0 = leq / N;
  ev.k1 = -paid / N;
  ev.value = -ev.lambda_star * delta + paid / N;
  // tiny negative values come from rounding in lambda*delta vs the paid sum
  if (ev.value < 0.0 && ev.value > -1e-12) ev.value = 0.0;
  return ev;
}

DualEvaluation dual_value_best(const Portfolio& p, const ScenarioSet& scen, double delta,
                               const FeasibilityConstants& fc) {
  if (auto msg = check_portfolio(p, scen.s0(), fc); !msg.empty()) throw InvalidPortfolio(msg);
  return dual_value_best(p.w, scen, delta);
}

DualEvaluation dual_value_worst(const Portfolio& p, const ScenarioSet& scen, double delta,
                                const FeasibilityConstants& fc) {
  if (auto msg = check_portfolio(p, scen.s0(), fc); !msg.empty()) throw InvalidPortfolio(msg);
  return dual_value_worst(p.w, scen, delta);
}

}  // namespace wassarb
