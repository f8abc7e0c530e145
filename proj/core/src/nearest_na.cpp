#include "wassarb/nearest_na.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wassarb/nnls.hpp"

namespace wassarb {

void NearestNAProblem::validate() const {
  if (p.size() < 1) throw std::invalid_argument("price vector is empty");
  if (X.rows() != p.size()) throw std::invalid_argument("payoff matrix rows must match price vector length");
  if (X.cols() < 1) throw std::invalid_argument("payoff matrix has no states");
  if (!p.allFinite() || !X.allFinite()) throw std::invalid_argument("prices and payoffs must be finite");
  if (complete_market) {
    if (X.rows() != X.cols()) throw std::invalid_argument("complete market needs a square payoff matrix");
    Eigen::JacobiSVD<Mat> svd(X);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) <= 0.0 || s(0) / s(s.size() - 1) > 1e10)
      throw std::invalid_argument("complete market needs a full-rank payoff matrix");
  }
}

namespace {

struct Reduced {
  const NearestNAProblem& prob;
  double beta;
  Vec target;  // p, or (1 + r0) p

  // residual vector whose norm is penalized
  Vec excess(const Vec& q) const {
    Vec e = prob.X * q - target;
    if (prob.mode == ShortSales::Forbidden) e = e.cwiseMax(0.0);
    return e;
  }

  // objective after eliminating the perturbation; also returns the gradient
  double value(const Vec& q, Vec* grad) const {
    const Vec e = excess(q);
    const double rho = e.norm();
    const double kappa = q.norm();
    if (kappa > 0.0 && 2.0 * beta * kappa * rho > 1.0) {
      if (grad) {
        *grad = prob.X.transpose() * e / (rho * kappa) - rho * q / (kappa * kappa * kappa) +
                q / (2.0 * beta * kappa * kappa * kappa * kappa);
      }
      return rho / kappa - 1.0 / (4.0 * beta * kappa * kappa);
    }
    if (grad) *grad = 2.0 * beta * prob.X.transpose() * e;
    return beta * rho * rho;
  }

  // optimal perturbation for fixed q: rank-one shrink along the residual
  Mat x_tilde(const Vec& q) const {
    const Vec e = excess(q);
    const double rho = e.norm();
    const double kappa = q.norm();
    if (!(kappa > 0.0) || 2.0 * beta * kappa * rho <= 1.0) return prob.X;
    const double a = (rho - 1.0 / (2.0 * beta * kappa)) / kappa;
    return prob.X - a * (e / rho) * (q / kappa).transpose();
  }
};

// Euclidean projection onto {q : q_i >= floor, sum q = 1}.
Vec project_shifted_simplex(const Vec& v, double floor) {
  const Eigen::Index s = v.size();
  const double mass = 1.0 - floor * static_cast<double>(s);
  if (mass < 0.0) throw std::invalid_argument("state-price floor too large for the number of states");
  std::vector<double> u(v.data(), v.data() + s);
  for (double& x : u) x -= floor;
  std::vector<double> sorted = u;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (Eigen::Index k = 0; k < s; ++k) {
    cum += sorted[static_cast<size_t>(k)];
    const double t = (cum - mass) / static_cast<double>(k + 1);
    if (sorted[static_cast<size_t>(k)] - t > 0.0) theta = t;
  }
  Vec out(s);
  for (Eigen::Index k = 0; k < s; ++k) out(k) = std::max(u[static_cast<size_t>(k)] - theta, 0.0) + floor;
  return out;
}

}  // namespace

NearestNAResult solve_relaxation(const NearestNAProblem& prob, double beta, const NearestNAConfig& cfg,
                                 const std::optional<Vec>& q_start) {
  prob.validate();
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and > 0");
  const bool forbidden = prob.mode == ShortSales::Forbidden;
  Reduced red{prob, beta, forbidden ? Vec((1.0 + prob.r0) * prob.p) : prob.p};

  auto project = [&](const Vec& v) -> Vec {
    return forbidden ? project_shifted_simplex(v, cfg.q_floor) : Vec(v.cwiseMax(0.0));
  };

  Vec q;
  if (q_start) {
    if (q_start->size() != prob.X.cols()) throw std::invalid_argument("warm start has wrong length");
    q = project(*q_start);
  } else {
    q = project(nnls(prob.X, red.target));
  }

  const double xnorm = Eigen::JacobiSVD<Mat>(prob.X).singularValues()(0);
  double step = 1.0 / (2.0 * beta * std::max(xnorm * xnorm, 1e-300));
  Vec g;
  double f = red.value(q, &g);
  int it = 0, flat = 0;
  bool converged = false;
  for (; it < cfg.max_iters; ++it) {
    Vec qn, gn;
    double fn = f;
    for (;;) {
      qn = project(q - step * g);
      fn = red.value(qn, &gn);
      if (fn <= f - 1e-4 * g.dot(q - qn) || step < 1e-300) break;
      step *= 0.5;
    }
    // no representable progress even as the trial step keeps doubling
    flat = f - fn < 1e-15 * std::max(1.0, std::abs(f)) ? flat + 1 : 0;
    if (fn <= f) {
      q = qn;
      f = fn;
      g = gn;
    }
    if (flat >= 20) {
      converged = true;
      break;
    }
    step *= 2.0;
  }

  NearestNAResult res;
  res.beta = beta;
  res.q = q;
  res.X_tilde = red.x_tilde(q);
  res.distance = (prob.X - res.X_tilde).norm();
  Vec e = res.X_tilde * q - red.target;
  if (forbidden) e = e.cwiseMax(0.0);
  res.residual = e.squaredNorm();
  res.objective = res.distance + beta * res.residual;
  res.iterations = it;
  res.converged = converged;
  if (prob.complete_market) {
    const auto s = Eigen::JacobiSVD<Mat>(res.X_tilde).singularValues();
    res.rank_ok = s(s.size() - 1) > 0.0 && s(0) / s(s.size() - 1) <= cfg.cond_limit;
  }
  return res;
}

TightBoundResult tight_bound(const NearestNAProblem& prob, const std::vector<double>& betas, double plateau_tol,
                             const NearestNAConfig& cfg) {
  if (betas.empty()) throw std::invalid_argument("beta schedule is empty");
  for (size_t k = 1; k < betas.size(); ++k)
    if (!(betas[k] > betas[k - 1])) throw std::invalid_argument("beta schedule must be increasing");
  if (!(plateau_tol > 0.0)) throw std::invalid_argument("plateau tolerance must be > 0");

  TightBoundResult out;
  std::optional<Vec> warm;
  for (size_t k = 0; k < betas.size(); ++k) {
    NearestNAResult r = solve_relaxation(prob, betas[k], cfg, warm);
    out.sweep.push_back({r.beta, r.objective, r.distance, r.residual, r.iterations});
    if (!r.converged) out.warnings.push_back("inner solve hit the iteration cap at beta=" + std::to_string(r.beta));
    if (k > 0) {
      const double prev = out.sweep[k - 1].objective;
      if (r.objective < prev)
        out.warnings.push_back("objective decreased along the beta schedule at beta=" + std::to_string(r.beta));
      if (std::abs(r.objective - prev) < plateau_tol * std::max(1.0, std::abs(prev))) {
        out.result = std::move(r);
        out.plateau_reached = true;
        return out;
      }
    }
    warm = r.q;
    out.result = std::move(r);
  }
  return out;
}

std::vector<double> geometric_betas(double first, double last, double factor) {
  if (!(first > 0.0) || !(last >= first) || !(factor > 1.0)) throw std::invalid_argument("bad beta schedule");
  std::vector<double> b;
  for (double x = first; x <= last * (1.0 + 1e-12); x *= factor) b.push_back(x);
  return b;
}

}  // namespace wassarb
