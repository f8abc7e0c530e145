#include "wassarb/pricing_apps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wassarb {

namespace {
constexpr double kLambdaCap = 1e12;
}

double empirical_call(const std::vector<double>& samples, double strike) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  double s = 0.0;
  for (double x : samples) s += std::max(x - strike, 0.0);
  return s / static_cast<double>(samples.size());
}

double robust_call_objective(const RobustCallSpec& spec, double lambda) {
  if (spec.samples.empty()) throw std::invalid_argument("no samples");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  double s = 0.0;
  for (double x : spec.samples) s += std::max(x - spec.strike + 1.0 / (2.0 * lambda), 0.0);
  return lambda * spec.delta_alpha + s / static_cast<double>(spec.samples.size());
}

RobustCallResult robust_call(const RobustCallSpec& spec) {
  if (spec.samples.empty()) throw std::invalid_argument("no samples");
  if (!(spec.delta_alpha >= 0.0) || !std::isfinite(spec.delta_alpha))
    throw std::invalid_argument("radius must be finite and >= 0");
  for (double x : spec.samples)
    if (!std::isfinite(x)) throw std::invalid_argument("samples must be finite");
  if (spec.delta_alpha == 0.0)
    return {empirical_call(spec.samples, spec.strike), std::numeric_limits<double>::infinity()};

  const double N = static_cast<double>(spec.samples.size());
  // Term i is active while lambda < 1 / (2 (k - s_i)); samples at or above the
  // strike are always active. Between breakpoints G is lambda*delta + A + |J|/(2 N lambda).
  std::vector<double> bps;
  for (double x : spec.samples)
    if (x < spec.strike) bps.push_back(1.0 / (2.0 * (spec.strike - x)));
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  std::vector<double> cuts{0.0};
  for (double b : bps)
    if (b < kLambdaCap) cuts.push_back(b);
  cuts.push_back(kLambdaCap);

  RobustCallResult best{std::numeric_limits<double>::infinity(), 0.0};
  auto consider = [&](double lam) {
    if (!(lam > 0.0)) return;
    const double g = robust_call_objective(spec, lam);
    if (g < best.price) best = {g, lam};
  };
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k], hi = cuts[k + 1];
    const double mid = lo > 0.0 ? std::sqrt(lo * hi) : hi / 2.0;
    int active = 0;
    for (double x : spec.samples)
      if (x - spec.strike + 1.0 / (2.0 * mid) > 0.0) ++active;
    if (active > 0) consider(std::clamp(std::sqrt(active / (2.0 * N * spec.delta_alpha)), lo, hi));
    consider(hi);
  }
  return best;
}

double robust_markowitz_objective(const MarkowitzSpec& spec) {
  const Eigen::Index N = spec.returns.rows(), d = spec.returns.cols();
  if (N < 1 || d < 1) throw std::invalid_argument("empty return sample");
  if (spec.phi.size() != d) throw std::invalid_argument("portfolio length does not match number of assets");
  if (!(spec.delta >= 0.0)) throw std::invalid_argument("radius must be >= 0");
  if (!(spec.p_norm >= 1.0)) throw std::invalid_argument("norm order must be >= 1");
  if (std::abs(spec.phi.sum() - 1.0) > 1e-9) throw std::invalid_argument("portfolio weights must sum to 1");

  const Eigen::RowVectorXd mean = spec.returns.colwise().mean();
  const Mat centred = spec.returns.rowwise() - mean;
  const Mat cov = centred.transpose() * centred / static_cast<double>(N);
  const double var = std::max(0.0, spec.phi.dot(cov * spec.phi));

  double norm;
  if (std::isinf(spec.p_norm))
    norm = spec.phi.cwiseAbs().maxCoeff();
  else
    norm = std::pow(spec.phi.cwiseAbs().array().pow(spec.p_norm).sum(), 1.0 / spec.p_norm);
  const double root = std::sqrt(var) + std::sqrt(spec.delta) * norm;
  return root * root;
}

}  // namespace wassarb
