#pragma once

#include <stdexcept>
#include <string>

namespace wassarb {

// Malformed input text (CSV, config). The CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPortfolio : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Restriction set admits no portfolio. The CLI maps this to exit code 3.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wassarb
