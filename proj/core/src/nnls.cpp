#include "wassarb/nnls.hpp"

#include <cmath>
#include <limits>

namespace wassarb {

Vec nnls(const Mat& A, const Vec& b, int max_iter) {
  const Eigen::Index n = A.cols();
  if (A.rows() != b.size()) throw std::invalid_argument("nnls: dimension mismatch");
  if (max_iter <= 0) max_iter = static_cast<int>(3 * n + 30);
  Vec x = Vec::Zero(n);
  std::vector<bool> passive(static_cast<size_t>(n), false);
  const double tol = 10 * std::numeric_limits<double>::epsilon() * A.norm() * std::max<Eigen::Index>(A.rows(), n) *
                     std::max(1.0, b.norm());

  auto solve_passive = [&](Vec& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
      if (passive[static_cast<size_t>(j)]) idx.push_back(j);
    z = Vec::Zero(n);
    if (idx.empty()) return;
    Mat Ap(A.rows(), static_cast<Eigen::Index>(idx.size()));
    for (size_t k = 0; k < idx.size(); ++k) Ap.col(static_cast<Eigen::Index>(k)) = A.col(idx[k]);
    const Vec zp = Ap.colPivHouseholderQr().solve(b);
    for (size_t k = 0; k < idx.size(); ++k) z(idx[k]) = zp(static_cast<Eigen::Index>(k));
  };

  for (int outer = 0; outer < max_iter; ++outer) {
    const Vec grad = A.transpose() * (b - A * x);
    Eigen::Index jmax = -1;
    double gmax = tol;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!passive[static_cast<size_t>(j)] && grad(j) > gmax) {
        gmax = grad(j);
        jmax = j;
      }
    if (jmax < 0) break;
    passive[static_cast<size_t>(jmax)] = true;

    Vec z;
    for (int inner = 0; inner < max_iter; ++inner) {
      solve_passive(z);
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<size_t>(j)] && z(j) <= 0.0) feasible = false;
      if (feasible) break;
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<size_t>(j)] && z(j) <= 0.0) alpha = std::min(alpha, x(j) / (x(j) - z(j)));
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<size_t>(j)] && std::abs(x(j)) <= tol) {
          passive[static_cast<size_t>(j)] = false;
          x(j) = 0.0;
        }
    }
    x = z;
  }
  return x.cwiseMax(0.0);
}

}  // namespace wassarb
