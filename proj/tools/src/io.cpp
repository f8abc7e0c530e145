#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wassarb/errors.hpp"

namespace wassarb::cli {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

namespace {

double to_double(const std::string& cell, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v))
    throw ParseError(where + ": not a finite number: '" + cell + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  const auto items = split(text, ',');
  for (size_t k = 0; k < items.size(); ++k) out.push_back(to_double(items[k], "list item " + std::to_string(k + 1)));
  if (out.empty()) throw ParseError("empty list");
  return out;
}

std::vector<double> parse_schedule(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return parse_list(text);
  if (parts.size() != 3 || parts[2].size() < 2) throw ParseError("schedule must look like a:b:xF or a:b:nK");
  const double lo = to_double(parts[0], "schedule start"), hi = to_double(parts[1], "schedule end");
  const double arg = to_double(parts[2].substr(1), "schedule step");
  std::vector<double> out;
  if (parts[2][0] == 'x') {
    if (!(lo > 0.0) || !(arg > 1.0) || hi < lo) throw ParseError("geometric schedule needs 0 < a <= b and factor > 1");
    for (double v = lo; v <= hi * (1.0 + 1e-12); v *= arg) out.push_back(v);
  } else if (parts[2][0] == 'n') {
    const int k = static_cast<int>(arg);
    if (k < 1 || hi < lo) throw ParseError("linear schedule needs a <= b and at least one point");
    for (int i = 0; i < k; ++i) out.push_back(k == 1 ? lo : lo + (hi - lo) * i / (k - 1));
  } else {
    throw ParseError("schedule step must start with x (factor) or n (count)");
  }
  return out;
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& text, std::vector<std::string>* header) {
  std::stringstream ss(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  size_t width = 0;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(ss, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (!have_header) {
      have_header = true;
      width = cells.size();
      if (header) *header = cells;
      continue;
    }
    if (cells.size() != width)
      throw ParseError("row " + std::to_string(lineno) + ": expected " + std::to_string(width) + " cells, found " +
                       std::to_string(cells.size()));
    std::vector<double> r;
    for (size_t j = 0; j < cells.size(); ++j)
      r.push_back(to_double(cells[j], "row " + std::to_string(lineno) + ", column " + std::to_string(j + 1)));
    rows.push_back(std::move(r));
  }
  if (!have_header) throw ParseError("empty CSV: no header row");
  if (rows.empty()) throw ParseError("CSV has no data rows");
  return rows;
}

DiscreteDistribution read_distribution_csv(const std::string& text) {
  std::vector<std::string> header;
  const auto rows = read_numeric_csv(text, &header);
  // provenance columns written by distribution_to_csv are not coordinates
  size_t width = header.size();
  while (width > 0 && (header[width - 1] == "origin" || header[width - 1] == "moved")) --width;
  if (width < 2) throw ParseError("distribution CSV needs a prob column and at least one coordinate");
  const auto n = static_cast<Eigen::Index>(rows.size()), d = static_cast<Eigen::Index>(width - 1);
  Mat support(n, d);
  Vec pmf(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    pmf(i) = rows[static_cast<size_t>(i)][0];
    for (Eigen::Index j = 0; j < d; ++j) support(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j + 1)];
  }
  try {
    return make_distribution(std::move(support), std::move(pmf));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string distribution_to_csv(const DiscreteDistribution& d) {
  std::string out = "prob";
  for (Eigen::Index j = 0; j < d.support.cols(); ++j) out += ",x" + std::to_string(j + 1);
  out += ",origin,moved\n";
  for (Eigen::Index i = 0; i < d.support.rows(); ++i) {
    out += fmt(d.pmf(i));
    for (Eigen::Index j = 0; j < d.support.cols(); ++j) out += "," + fmt(d.support(i, j));
    out += "," + std::to_string(d.origin[static_cast<size_t>(i)]) + "," + fmt(d.moved_distance(i)) + "\n";
  }
  return out;
}

}  // namespace wassarb::cli
