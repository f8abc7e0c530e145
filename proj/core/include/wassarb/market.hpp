#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wassarb/errors.hpp"

namespace wassarb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Initial prices plus N equally weighted time-1 scenarios.
// Scenarios are stored one per row (N x n).
class ScenarioSet {
 public:
  ScenarioSet(std::vector<std::string> asset_names, Vec s0, Mat scenarios);

  const std::vector<std::string>& asset_names() const { return names_; }
  const Vec& s0() const { return s0_; }
  const Mat& scenarios() const { return scen_; }
  int n_assets() const { return static_cast<int>(s0_.size()); }
  int n_scenarios() const { return static_cast<int>(scen_.rows()); }

  // mean Euclidean norm of the scenario vectors
  double mean_norm() const;
  // mean distance of scenarios to their centroid
  double dispersion() const;

 private:
  std::vector<std::string> names_;
  Vec s0_;
  Mat scen_;
};

enum class S0Mode { ExplicitRow, ArithmeticMean };

ScenarioSet load_scenarios(std::string_view csv_text, S0Mode mode);

enum class Admissibility { Weak, Strong };

struct PortfolioRestrictions {
  // per-asset lower bound on w_j; empty means -M for every asset
  std::vector<double> short_sale_limits;
  double min_position = 0.0;
  std::optional<double> max_position;   // defaults to M
  std::optional<int> cardinality;       // defaults to n
  struct Group {
    std::vector<int> assets;
    double cap;  // currency units
  };
  std::vector<Group> allocation_caps;

  // true when every field reproduces the unrestricted defaults
  bool trivial(int n, double big_m) const;
};

struct FeasibilityConstants {
  double big_m = 1000.0;
  double epsilon = 0.001;
  double rel_tol = 1e-8;  // slack on w.s0 = 0, relative to ||s0||
};

struct Portfolio {
  Vec w;
  Admissibility admissibility = Admissibility::Strong;
  std::optional<PortfolioRestrictions> restrictions;
};

// Empty string when feasible, otherwise a description of the first violation.
std::string check_portfolio(const Portfolio& p, const Vec& s0,
                            const FeasibilityConstants& fc = {});

// Distance of each scenario to the hyperplane {x : w.x = 0}.
Vec scenario_costs(const Vec& w, const ScenarioSet& scen);

}  // namespace wassarb
