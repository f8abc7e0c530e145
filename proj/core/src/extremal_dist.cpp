#include "wassarb/extremal_dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wassarb {

namespace {

// Shared greedy. `movable` selects scenarios that pay transport; each moves
// along -sign(w.s_i) * w/||w||, i.e. across the hyperplane.
DiscreteDistribution greedy(const Vec& w, const ScenarioSet& scen, double delta, bool move_positive,
                            const GreedyOptions& opt) {
  if (delta < 0.0 || !std::isfinite(delta)) throw std::invalid_argument("radius must be finite and >= 0");
  if (opt.overshoot < 0.0) throw std::invalid_argument("overshoot must be >= 0");
  const Vec costs = scenario_costs(w, scen);
  const Vec margins = scen.scenarios() * w;
  const Vec unit = w / w.norm();
  const int N = scen.n_scenarios();

  std::vector<int> order;
  for (int i = 0; i < N; ++i)
    if (move_positive ? margins(i) > 0.0 : margins(i) < 0.0) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return costs(a) < costs(b); });

  DiscreteDistribution d = empirical_distribution(scen);
  d.split_rule = "budget-exact: moved share = (N*delta - spent) / cost";
  const double budget = N * delta;
  double used = 0.0;

  auto moved_point = [&](int i, double& dist) {
    const double extra = std::max(opt.overshoot * costs(i), 1e-13 * scen.scenarios().row(i).norm());
    dist = costs(i) + extra;
    const double sgn = margins(i) > 0.0 ? 1.0 : -1.0;
    return Vec(scen.scenarios().row(i).transpose() - sgn * dist * unit);
  };

  std::vector<Vec> extra_points;
  std::vector<double> extra_mass, extra_dist;
  for (int i : order) {
    if (used + costs(i) <= budget) {
      double dist = 0.0;
      d.support.row(i) = moved_point(i, dist).transpose();
      d.moved_distance(i) = dist;
      d.transport_cost += dist / N;
      used += costs(i);
      continue;
    }
    const double p0 = (budget - used) / costs(i);
    if (p0 > 0.0) {
      double dist = 0.0;
      extra_points.push_back(moved_point(i, dist));
      extra_mass.push_back(p0 / N);
      extra_dist.push_back(dist);
      d.pmf(i) = (1.0 - p0) / N;
      d.transport_cost += p0 * dist / N;
      d.split_origin = i;
      used = budget;
    }
    break;
  }
  d.budget_used = used / N;

  if (!extra_points.empty()) {
    const int k = N;
    d.support.conservativeResize(N + 1, Eigen::NoChange);
    d.support.row(k) = extra_points[0].transpose();
    d.pmf.conservativeResize(N + 1);
    d.pmf(k) = extra_mass[0];
    d.moved_distance.conservativeResize(N + 1);
    d.moved_distance(k) = extra_dist[0];
    d.origin.push_back(d.split_origin);
  }
  return d;
}

}  // namespace

DiscreteDistribution best_case_distribution(const Vec& w, const ScenarioSet& scen, double delta,
                                            const GreedyOptions& opt) {
  return greedy(w, scen, delta, false, opt);
}

DiscreteDistribution worst_case_distribution(const Vec& w, const ScenarioSet& scen, double delta,
                                             const GreedyOptions& opt) {
  return greedy(w, scen, delta, true, opt);
}

}  // namespace wassarb
