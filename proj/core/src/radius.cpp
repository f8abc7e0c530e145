#include "wassarb/radius.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wassarb {

bool is_worst_side(RadiusSide side) { return side == RadiusSide::SAWorst; }

MaximinResult solve_side(const ScenarioSet& scen, RadiusSide side, double delta, const SearchConfig& cfg,
                         const std::optional<PortfolioRestrictions>& restrictions) {
  switch (side) {
    case RadiusSide::NAWeak:
      return maximize_best_case(scen, delta, Admissibility::Weak, restrictions, cfg);
    case RadiusSide::NAStrong:
    case RadiusSide::SABest:
      return maximize_best_case(scen, delta, Admissibility::Strong, restrictions, cfg);
    case RadiusSide::SAWorst:
      return maximize_worst_case(scen, delta, restrictions, cfg);
  }
  throw std::invalid_argument("unknown side");
}

RadiusResult critical_radius(const ScenarioSet& scen, RadiusSide side, double alpha, const RadiusConfig& cfg) {
  const bool worst = is_worst_side(side);
  if (side == RadiusSide::NAWeak || side == RadiusSide::NAStrong) {
    if (alpha != 1.0) throw std::invalid_argument("no-arbitrage sides use alpha = 1");
  } else if (side == RadiusSide::SABest) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("best-case level must lie in (0, 1)");
  } else if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("worst-case level must lie in [0, 1)");
  }
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  const double dmax = cfg.delta_max.value_or(10.0 * scen.mean_norm());

  RadiusResult res;
  res.side = side;
  res.alpha = alpha;
  auto holds = [&](double v) { return worst ? v <= alpha + 1e-12 : v >= alpha - 1e-12; };

  std::vector<Vec> known;  // portfolios at the current brackets
  auto probe = [&](double delta) {
    SearchConfig sc = cfg.search;
    sc.hot_starts.insert(sc.hot_starts.end(), known.begin(), known.end());
    MaximinResult m = solve_side(scen, side, delta, sc, cfg.restrictions);
    res.evaluations.push_back({delta, m.value, m.w_opt});
    return m;
  };

  MaximinResult at0 = probe(0.0);
  if (holds(at0.value)) {
    res.delta_star = res.lo = res.hi = 0.0;
    res.w_at_star = at0.w_opt;
    return res;
  }
  Vec w_lo = at0.w_opt, w_hi;
  double lo = 0.0, hi = cfg.tol;
  for (;;) {
    known = {w_lo};
    MaximinResult m = probe(hi);
    if (holds(m.value)) {
      w_hi = m.w_opt;
      break;
    }
    lo = hi;
    w_lo = m.w_opt;
    if (hi >= dmax) {
      res.attained = false;
      res.lo = lo;
      res.hi = hi;
      res.delta_star = hi;
      res.w_at_star = w_lo;
      return res;
    }
    hi = std::min(2.0 * hi, dmax);
  }

  while (hi - lo > cfg.tol * hi) {
    const double mid = 0.5 * (lo + hi);
    known = {w_lo, w_hi};
    MaximinResult m = probe(mid);
    if (holds(m.value)) {
      hi = mid;
      w_hi = m.w_opt;
    } else {
      lo = mid;
      w_lo = m.w_opt;
    }
  }
  res.lo = lo;
  res.hi = hi;
  res.delta_star = hi;
  res.w_at_star = w_hi;
  return res;
}

CurveResult sweep_curve(const ScenarioSet& scen, RadiusSide side, const std::vector<double>& deltas,
                        const SearchConfig& cfg, const std::optional<PortfolioRestrictions>& restrictions) {
  if (deltas.empty()) throw std::invalid_argument("radius list is empty");
  for (size_t k = 1; k < deltas.size(); ++k)
    if (deltas[k] < deltas[k - 1]) throw std::invalid_argument("radius list must be ascending");
  const bool worst = is_worst_side(side);

  CurveResult out;
  out.points.resize(deltas.size());
  std::optional<Vec> prev;
  const size_t K = deltas.size();
  for (size_t step = 0; step < K; ++step) {
    const size_t k = worst ? K - 1 - step : step;
    SearchConfig sc = cfg;
    if (prev) sc.hot_starts.push_back(*prev);
    MaximinResult m = solve_side(scen, side, deltas[k], sc, restrictions);
    out.points[k] = {deltas[k], m.value, m.w_opt};
    prev = m.w_opt;
  }
  for (size_t k = 1; k < K; ++k) {
    const double a = out.points[k - 1].value, b = out.points[k].value;
    if (worst ? b > a + 1e-12 : b < a - 1e-12) {
      std::ostringstream msg;
      msg << "curve not monotone between radius " << deltas[k - 1] << " and " << deltas[k];
      out.warnings.push_back(msg.str());
    }
  }
  return out;
}

}  // namespace wassarb
