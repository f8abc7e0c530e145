#include "wassarb/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace wassarb {

DiscreteDistribution empirical_distribution(const ScenarioSet& scen) {
  const int N = scen.n_scenarios();
  DiscreteDistribution d;
  d.support = scen.scenarios();
  d.pmf = Vec::Constant(N, 1.0 / N);
  d.origin.resize(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) d.origin[static_cast<size_t>(i)] = i;
  d.moved_distance = Vec::Zero(N);
  return d;
}

DiscreteDistribution make_distribution(Mat support, Vec pmf) {
  if (support.rows() != pmf.size()) throw std::invalid_argument("support and pmf sizes differ");
  DiscreteDistribution d;
  d.support = std::move(support);
  d.pmf = std::move(pmf);
  d.origin.assign(static_cast<size_t>(d.pmf.size()), -1);
  d.moved_distance = Vec::Zero(d.pmf.size());
  validate_pmf(d);
  return d;
}

void validate_pmf(const DiscreteDistribution& d, double tol) {
  if (d.pmf.size() == 0) throw std::invalid_argument("distribution has no support points");
  if (d.support.rows() != d.pmf.size()) throw std::invalid_argument("support and pmf sizes differ");
  if (!d.pmf.allFinite() || d.pmf.minCoeff() < 0.0) throw std::invalid_argument("pmf has negative or non-finite mass");
  if (std::abs(d.pmf.sum() - 1.0) > tol) throw std::invalid_argument("pmf is not normalized");
}

double indicator_mass(const DiscreteDistribution& d, const Vec& w, bool strict) {
  const Vec m = d.support * w;
  double mass = 0.0;
  for (Eigen::Index k = 0; k < m.size(); ++k)
    if (strict ? m(k) > 0.0 : m(k) >= 0.0) mass += d.pmf(k);
  return mass;
}

}  // namespace wassarb
