#include "wassarb/market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace wassarb {

ScenarioSet::ScenarioSet(std::vector<std::string> asset_names, Vec s0, Mat scenarios)
    : names_(std::move(asset_names)), s0_(std::move(s0)), scen_(std::move(scenarios)) {
  const auto n = s0_.size();
  if (n < 1) throw std::invalid_argument("scenario set needs at least one asset");
  if (scen_.rows() < 1) throw std::invalid_argument("scenario set needs at least one scenario (N=0)");
  if (scen_.cols() != n)
    throw std::invalid_argument("scenario length does not match number of assets");
  if (!names_.empty() && static_cast<Eigen::Index>(names_.size()) != n)
    throw std::invalid_argument("asset name count does not match number of assets");
  if (names_.empty())
    for (Eigen::Index j = 0; j < n; ++j) names_.push_back("a" + std::to_string(j));
  if (!s0_.allFinite() || !scen_.allFinite())
    throw std::invalid_argument("prices must be finite");
  if (s0_.isZero(0.0)) throw std::invalid_argument("initial price vector is zero");
}

double ScenarioSet::mean_norm() const { return scen_.rowwise().norm().mean(); }

double ScenarioSet::dispersion() const {
  const Eigen::RowVectorXd centre = scen_.colwise().mean();
  return (scen_.rowwise() - centre).rowwise().norm().mean();
}

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool is_label_column(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return name == "date" || name == "label";
}

}  // namespace

ScenarioSet load_scenarios(std::string_view csv_text, S0Mode mode) {
  std::vector<std::string> lines;
  {
    std::string buf(csv_text);
    std::istringstream in(buf);
    std::string line;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      lines.push_back(line);
    }
  }
  if (lines.empty()) throw ParseError("empty CSV: no header row");

  const auto header = split_row(lines[0]);
  std::vector<int> numeric_cols;
  std::vector<std::string> names;
  for (size_t j = 0; j < header.size(); ++j) {
    if (is_label_column(header[j])) continue;
    if (header[j].empty())
      throw ParseError("row 1, column " + std::to_string(j + 1) + ": empty asset name");
    numeric_cols.push_back(static_cast<int>(j));
    names.push_back(header[j]);
  }
  if (numeric_cols.empty()) throw ParseError("row 1: header names no asset columns");

  std::vector<std::vector<double>> rows;
  for (size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_row(lines[r]);
    if (cells.size() != header.size())
      throw ParseError("row " + std::to_string(r + 1) + ": expected " + std::to_string(header.size()) +
                       " cells, found " + std::to_string(cells.size()));
    std::vector<double> vals;
    for (int j : numeric_cols) {
      const std::string& cell = cells[static_cast<size_t>(j)];
      char* end = nullptr;
      double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v))
        throw ParseError("row " + std::to_string(r + 1) + ", column " + std::to_string(j + 1) +
                         ": not a finite number: '" + cell + "'");
      vals.push_back(v);
    }
    rows.push_back(std::move(vals));
  }

  const int n = static_cast<int>(names.size());
  size_t first = 0;
  Vec s0(n);
  if (mode == S0Mode::ExplicitRow) {
    if (rows.empty()) throw ParseError("no data rows: explicit s0 row missing");
    for (int j = 0; j < n; ++j) s0(j) = rows[0][static_cast<size_t>(j)];
    first = 1;
  }
  const size_t N = rows.size() - first;
  if (N == 0) throw ParseError("no scenario rows (N=0)");
  Mat scen(static_cast<Eigen::Index>(N), n);
  for (size_t i = 0; i < N; ++i)
    for (int j = 0; j < n; ++j) scen(static_cast<Eigen::Index>(i), j) = rows[first + i][static_cast<size_t>(j)];
  if (mode == S0Mode::ArithmeticMean) s0 = scen.colwise().mean().transpose();

  try {
    return ScenarioSet(std::move(names), std::move(s0), std::move(scen));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

bool PortfolioRestrictions::trivial(int n, double big_m) const {
  for (double ss : short_sale_limits)
    if (ss > -big_m) return false;
  if (min_position > 0.0) return false;
  if (max_position && *max_position < big_m) return false;
  if (cardinality && *cardinality < n) return false;
  for (const auto& g : allocation_caps)
    if (g.cap < big_m * n) return false;
  return true;
}

std::string check_portfolio(const Portfolio& p, const Vec& s0, const FeasibilityConstants& fc) {
  const Vec& w = p.w;
  if (w.size() != s0.size()) return "weight vector length does not match number of assets";
  if (!w.allFinite()) return "weights must be finite";
  const double slack = 1e-12 * std::max(1.0, fc.big_m);
  if (w.cwiseAbs().maxCoeff() > fc.big_m + slack) return "weight exceeds box bound M";
  const double cost = w.dot(s0);
  if (p.admissibility == Admissibility::Weak) {
    if (std::abs(cost) > fc.rel_tol * s0.norm()) return "weak portfolio must have zero cost";
    if (w.cwiseAbs().sum() < fc.epsilon) return "weak portfolio must be nonzero";
  } else {
    if (cost > -fc.epsilon * (1.0 - 1e-12)) return "strong portfolio must have cost <= -epsilon";
    if (p.restrictions && cost < -fc.big_m * (1.0 + 1e-12)) return "strong portfolio cost below -M";
  }
  if (!p.restrictions) return {};

  const auto& r = *p.restrictions;
  const int n = static_cast<int>(w.size());
  if (!r.short_sale_limits.empty()) {
    if (static_cast<int>(r.short_sale_limits.size()) != n) return "short-sale limit count mismatch";
    for (int j = 0; j < n; ++j)
      if (w(j) < r.short_sale_limits[static_cast<size_t>(j)] - slack) return "short-sale limit violated";
  }
  const double wmax = r.max_position.value_or(fc.big_m);
  int held = 0;
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(w(j));
    if (a > wmax + slack) return "max position violated";
    if (a >= fc.epsilon) {
      ++held;
      if (a < r.min_position - slack) return "min position violated";
    }
  }
  if (held > r.cardinality.value_or(n)) return "cardinality violated";
  for (const auto& g : r.allocation_caps) {
    double exposure = 0.0;
    for (int j : g.assets) {
      if (j < 0 || j >= n) return "allocation group names an unknown asset";
      exposure += w(j) * s0(j);
    }
    if (std::abs(exposure) > g.cap * (1.0 + 1e-12) + slack) return "allocation cap violated";
  }
  return {};
}

Vec scenario_costs(const Vec& w, const ScenarioSet& scen) {
  const double norm = w.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidPortfolio("zero portfolio has no hyperplane");
  if (w.size() != scen.n_assets()) throw InvalidPortfolio("weight vector length does not match number of assets");
  return (scen.scenarios() * w).cwiseAbs() / norm;
}

}  // namespace wassarb
