#include "wassarb/fixtures.hpp"

#include <stdexcept>

namespace wassarb {

namespace {

// Two-state market: stock and bond, first row is the time-0 price.
const char* kBinomial =
    "stock,bond\n"
    "300,100\n"
    "310,100.5\n"
    "290,99.5\n";

// Monthly closes, 2019; s0 is the column mean.
const char* kPairs =
    "date,GOOG,AMZN\n"
    "2019-01,1188.48,1926.52\n"
    "2019-02,1103.63,1775.07\n"
    "2019-03,1080.91,1893.63\n"
    "2019-04,1216.68,1866.78\n"
    "2019-05,1188.10,1776.29\n"
    "2019-06,1219.00,1735.91\n"
    "2019-07,1260.11,1776.66\n"
    "2019-08,1304.96,1800.80\n"
    "2019-09,1337.02,1847.84\n"
    "2019-10,1434.23,2008.72\n"
    "2019-11,1339.33,1883.75\n"
    "2019-12,1298.41,1901.09\n";

const char* kEquityBasket =
    "date,APA,AXP,CAT,COF,FCX,IBM,MMM\n"
    "2019-06,28.13,122.16,133.26,89.62,11.45,133.31,168.77\n"
    "2019-07,23.71,123.08,128.74,91.28,10.91,143.31,170.11\n"
    "2019-08,21.17,119.50,117.25,85.56,9.10,131.02,157.45\n"
    "2019-09,25.12,117.42,124.45,90.26,9.48,142.24,161.53\n"
    "2019-10,21.25,116.43,135.77,92.51,9.73,130.80,162.11\n"
    "2019-11,22.11,119.71,143.72,99.22,11.34,131.51,166.80\n"
    "2019-12,25.39,124.06,146.65,102.51,13.07,132.65,174.84\n";

const char* kIndexBasket =
    "date,DJI,GSPC,IXIC,USO,SGOL\n"
    "2019-06,26600,2942,8006,12.04,13.60\n"
    "2019-07,26864,2980,8175,12.04,13.61\n"
    "2019-08,26403,2926,7963,11.46,14.69\n"
    "2019-09,26917,2977,7999,11.34,14.20\n"
    "2019-10,27046,3038,8292,11.30,14.56\n"
    "2019-11,28051,3141,8665,11.62,14.16\n"
    "2019-12,28538,3231,8973,12.81,14.62\n";

Mat rows_to_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto s = static_cast<Eigen::Index>(rows.begin()->size());
  Mat X(n, s);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) X(i, j++) = v;
    ++i;
  }
  return X;
}

}  // namespace

const std::vector<ScenarioFixture>& scenario_fixtures() {
  static const std::vector<ScenarioFixture> all{
      {"binomial", kBinomial, S0Mode::ExplicitRow, "one-period binomial stock/bond market"},
      {"pairs", kPairs, S0Mode::ArithmeticMean, "Google/Amazon monthly closes, 2019"},
      {"equity_basket", kEquityBasket, S0Mode::ArithmeticMean, "seven equities, June-December 2019"},
      {"index_basket", kIndexBasket, S0Mode::ArithmeticMean, "index and ETF basket, June-December 2019"},
  };
  return all;
}

const ScenarioFixture& scenario_fixture(const std::string& name) {
  for (const auto& f : scenario_fixtures())
    if (f.name == name) return f;
  throw std::invalid_argument("unknown fixture: " + name);
}

ScenarioSet load_fixture(const std::string& name) {
  const auto& f = scenario_fixture(name);
  return load_scenarios(f.csv, f.mode);
}

std::vector<std::string> nearest_fixture_names() { return {"binomial", "binomial2", "russell_sp", "index_basket"}; }

NearestNAProblem nearest_fixture(const std::string& name) {
  NearestNAProblem p;
  if (name == "binomial") {
    p.p = Vec::Map(std::vector<double>{300, 100}.data(), 2);
    p.X = rows_to_matrix({{304, 304}, {101, 101}});
  } else if (name == "binomial2") {
    p.p = Vec::Map(std::vector<double>{300, 100}.data(), 2);
    p.X = rows_to_matrix({{309, 306}, {101, 101}});
  } else if (name == "russell_sp") {
    p.p = Vec::Map(std::vector<double>{1660, 2750}.data(), 2);
    p.X = rows_to_matrix({{1591, 1466, 1567, 1577, 1495, 1523, 1562, 1625, 1668, 1614, 1476, 1153},
                          {2946, 2752, 2942, 2980, 2926, 2977, 3038, 3141, 3230, 3226, 2954, 2585}});
  } else if (name == "index_basket") {
    // last GSPC entry is 3230 here, as in the published payoff display
    p.p = Vec::Map(std::vector<double>{25000, 2704, 7729, 12.50, 12.46}.data(), 5);
    p.X = rows_to_matrix({
        {25000, 25916, 25929, 26593, 24815, 26600, 26864, 26403, 26917, 27046, 28051, 28538},
        {2704, 2785, 2834, 2946, 2752, 2942, 2980, 2926, 2977, 3038, 3141, 3230},
        {7282, 7533, 7729, 8095, 7453, 8006, 8175, 7963, 7999, 8292, 8665, 8973},
        {11.35, 11.95, 12.50, 13.29, 11.10, 12.04, 12.04, 11.46, 11.34, 11.30, 11.62, 12.81},
        {12.73, 12.65, 12.46, 12.37, 12.59, 13.60, 13.61, 14.69, 14.20, 14.56, 14.16, 14.62},
    });
  } else {
    throw std::invalid_argument("unknown nearest-arbitrage fixture: " + name);
  }
  return p;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace wassarb
