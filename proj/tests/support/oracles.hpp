#pragma once

// Slow, independent reference implementations. Nothing here calls into the
// library's solvers; only the plain data types are shared.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/LU>

#include "wassarb/market.hpp"

namespace oracle {

using wassarb::Mat;
using wassarb::Vec;

struct LambdaMin {
  double lambda;
  double value;
};

// Best-case dual objective written out from scratch.
inline double best_objective(double lambda, const Mat& scen, const Vec& w, double delta) {
  const double norm = w.norm();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < scen.rows(); ++i) {
    const double m = scen.row(i).dot(w);
    if (m >= 0.0) {
      sum += 1.0;
    } else {
      const double c = std::abs(m) / norm;
      sum += std::max(0.0, 1.0 - lambda * c);
    }
  }
  return lambda * delta + sum / static_cast<double>(scen.rows());
}

// Worst case, in the form that gets minimized; the value is minus the minimum.
inline double worst_objective(double lambda, const Mat& scen, const Vec& w, double delta) {
  const double norm = w.norm();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < scen.rows(); ++i) {
    const double m = scen.row(i).dot(w);
    if (m > 0.0) sum += std::max(0.0, 1.0 - lambda * m / norm) - 1.0;
  }
  return lambda * delta + sum / static_cast<double>(scen.rows());
}

// Every candidate breakpoint, tried one at a time.
template <class F>
LambdaMin brute_force_lambda(const Mat& scen, const Vec& w, F objective, bool positive_side) {
  const double norm = w.norm();
  std::vector<double> cands{0.0};
  for (Eigen::Index i = 0; i < scen.rows(); ++i) {
    const double m = scen.row(i).dot(w);
    if ((positive_side ? m > 0.0 : m < 0.0) && m != 0.0) cands.push_back(norm / std::abs(m));
  }
  LambdaMin best{0.0, std::numeric_limits<double>::infinity()};
  for (double l : cands) {
    const double v = objective(l);
    if (v < best.value) best = {l, v};
  }
  return best;
}

// Exact OT between two uniform measures of equal size: the transport polytope's
// vertices are the permutation matrices.
inline double assignment_ot(const Mat& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (int i = 0; i < n; ++i) c += cost(i, perm[static_cast<size_t>(i)]);
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / n;
}

// Exact OT for general marginals by vertex enumeration: every vertex of the
// transport polytope is a basic solution on m + n - 1 cells. All cell subsets of
// that size are tried (sizes <= 4 x 4).
inline double vertex_enumeration_ot(const Vec& a, const Vec& b, const Mat& cost) {
  const int m = static_cast<int>(a.size()), n = static_cast<int>(b.size());
  const int cells = m * n, k = m + n - 1;
  Vec rhs(k);
  rhs << a, b.head(n - 1);
  std::vector<bool> pick(static_cast<size_t>(cells), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  double best = std::numeric_limits<double>::infinity();
  do {
    Mat A = Mat::Zero(k, k);
    std::vector<int> chosen;
    for (int c = 0; c < cells; ++c)
      if (pick[static_cast<size_t>(c)]) chosen.push_back(c);
    for (int t = 0; t < k; ++t) {
      const int i = chosen[static_cast<size_t>(t)] / n, j = chosen[static_cast<size_t>(t)] % n;
      A(i, t) = 1.0;
      if (j < n - 1) A(m + j, t) = 1.0;
    }
    Eigen::FullPivLU<Mat> lu(A);
    if (!lu.isInvertible()) continue;
    const Vec x = lu.solve(rhs);
    if (x.minCoeff() < -1e-12) continue;
    double c = 0.0;
    for (int t = 0; t < k; ++t) c += x(t) * cost(chosen[static_cast<size_t>(t)] / n, chosen[static_cast<size_t>(t)] % n);
    best = std::min(best, c);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

// Robust call objective on a dense grid in lambda.
inline double call_grid_min(const std::vector<double>& s, double k, double delta, double lo, double hi, int n) {
  double best = std::numeric_limits<double>::infinity();
  for (int t = 0; t <= n; ++t) {
    const double lam = lo * std::pow(hi / lo, static_cast<double>(t) / n);
    double sum = 0.0;
    for (double x : s) sum += std::max(0.0, x - k + 1.0 / (2.0 * lam));
    best = std::min(best, lam * delta + sum / static_cast<double>(s.size()));
  }
  return best;
}

// Mean-variance objective expanded by hand with explicit loops.
inline double markowitz_by_hand(const Mat& r, const Vec& phi, double delta, double p) {
  const auto N = r.rows(), d = r.cols();
  std::vector<double> mean(static_cast<size_t>(d), 0.0);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < d; ++j) mean[static_cast<size_t>(j)] += r(i, j) / static_cast<double>(N);
  double var = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    double x = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) x += phi(j) * (r(i, j) - mean[static_cast<size_t>(j)]);
    var += x * x / static_cast<double>(N);
  }
  double norm = 0.0;
  if (std::isinf(p)) {
    for (Eigen::Index j = 0; j < d; ++j) norm = std::max(norm, std::abs(phi(j)));
  } else {
    for (Eigen::Index j = 0; j < d; ++j) norm += std::pow(std::abs(phi(j)), p);
    norm = std::pow(norm, 1.0 / p);
  }
  const double root = std::sqrt(var) + std::sqrt(delta) * norm;
  return root * root;
}

inline Mat random_matrix(std::mt19937_64& rng, int rows, int cols, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

inline Vec random_simplex(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> e(1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = e(rng) + 1e-3;
  return v / v.sum();
}

// Random market: positive prices around 100, time-0 prices at the scenario mean.
inline wassarb::ScenarioSet random_market(std::mt19937_64& rng, int n, int N) {
  Mat s = random_matrix(rng, N, n, 50.0, 150.0);
  Vec s0 = s.colwise().mean().transpose();
  std::vector<std::string> names;
  for (int j = 0; j < n; ++j) names.push_back("a" + std::to_string(j));
  return wassarb::ScenarioSet(names, s0, s);
}

// Portfolio of zero cost, random direction.
inline Vec random_zero_cost(std::mt19937_64& rng, const Vec& s0) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec w(s0.size());
  for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = g(rng);
  w -= (w.dot(s0) / s0.squaredNorm()) * s0;
  return w;
}

}  // namespace oracle
