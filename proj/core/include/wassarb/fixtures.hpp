#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wassarb/market.hpp"
#include "wassarb/nearest_na.hpp"

namespace wassarb {

struct ScenarioFixture {
  std::string name;
  std::string csv;
  S0Mode mode;
  std::string description;
};

// binomial, pairs, equity_basket, index_basket
const std::vector<ScenarioFixture>& scenario_fixtures();
const ScenarioFixture& scenario_fixture(const std::string& name);
ScenarioSet load_fixture(const std::string& name);

// binomial, binomial2, russell_sp, index_basket
std::vector<std::string> nearest_fixture_names();
NearestNAProblem nearest_fixture(const std::string& name);

// FNV-1a, used to pin the embedded data
std::uint64_t fnv1a64(const std::string& text);

}  // namespace wassarb
