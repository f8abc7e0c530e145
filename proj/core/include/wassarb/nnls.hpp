#pragma once

#include "wassarb/market.hpp"

namespace wassarb {

// Lawson-Hanson active-set solver for min ||A x - b|| subject to x >= 0.
Vec nnls(const Mat& A, const Vec& b, int max_iter = 0);

}  // namespace wassarb
