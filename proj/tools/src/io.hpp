#pragma once

#include <string>
#include <vector>

#include "wassarb/distribution.hpp"

namespace wassarb::cli {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// "1,2.5,3" -> {1, 2.5, 3}
std::vector<double> parse_list(const std::string& text);
// "1:1024:x2" (geometric) or "0:1:n5" (5 evenly spaced) or a plain list
std::vector<double> parse_schedule(const std::string& text);

// Numeric CSV with a header row; returns rows.
std::vector<std::vector<double>> read_numeric_csv(const std::string& text, std::vector<std::string>* header = nullptr);

// Distribution CSV: header "prob,x1,...,xn", one row per support point.
DiscreteDistribution read_distribution_csv(const std::string& text);
std::string distribution_to_csv(const DiscreteDistribution& d);

// %.17g
std::string fmt(double x);

}  // namespace wassarb::cli
