#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wassarb/maximin.hpp"

namespace wassarb {

enum class RadiusSide { NAWeak, NAStrong, SABest, SAWorst };

struct RadiusConfig {
  SearchConfig search;
  std::optional<PortfolioRestrictions> restrictions;
  double tol = 0.05;                   // stop when hi - lo <= tol * hi
  std::optional<double> delta_max;     // default 10 x mean scenario norm
};

struct CurvePoint {
  double delta;
  double value;
  Vec w;
};

struct RadiusResult {
  double delta_star = 0.0;
  RadiusSide side = RadiusSide::NAStrong;
  double alpha = 1.0;
  double lo = 0.0, hi = 0.0;
  bool attained = true;
  Vec w_at_star;
  std::vector<CurvePoint> evaluations;  // every probed radius, in probe order
};

// One maximin solve of the side's objective at a given radius.
MaximinResult solve_side(const ScenarioSet& scen, RadiusSide side, double delta, const SearchConfig& cfg,
                         const std::optional<PortfolioRestrictions>& restrictions);

// Smallest radius at which v >= alpha (best-case sides) or v^wc <= alpha (worst case).
RadiusResult critical_radius(const ScenarioSet& scen, RadiusSide side, double alpha, const RadiusConfig& cfg);

struct CurveResult {
  std::vector<CurvePoint> points;
  std::vector<std::string> warnings;  // monotonicity breaks are reported, not repaired
};

// Hot-started sweep. Best-case sides chain upward through the radii; the worst
// case chains downward, since v^wc is nonincreasing in the radius for fixed w.
CurveResult sweep_curve(const ScenarioSet& scen, RadiusSide side, const std::vector<double>& deltas,
                        const SearchConfig& cfg, const std::optional<PortfolioRestrictions>& restrictions = std::nullopt);

bool is_worst_side(RadiusSide side);

}  // namespace wassarb
