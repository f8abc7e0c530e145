#include "wassarb/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace wassarb {

Mat ground_cost(const DiscreteDistribution& a, const DiscreteDistribution& b, double p) {
  if (a.support.cols() != b.support.cols()) throw std::invalid_argument("support dimensions differ");
  Mat C(a.support.rows(), b.support.rows());
  for (Eigen::Index i = 0; i < C.rows(); ++i)
    for (Eigen::Index j = 0; j < C.cols(); ++j) {
      const double d = (a.support.row(i) - b.support.row(j)).norm();
      C(i, j) = p == 1.0 ? d : std::pow(d, p);
    }
  return C;
}

namespace {

void check_marginals(const Vec& a, const Vec& b, const Mat& cost) {
  if (cost.rows() != a.size() || cost.cols() != b.size()) throw std::invalid_argument("cost matrix shape mismatch");
  if (a.size() == 0 || b.size() == 0) throw std::invalid_argument("empty marginal");
  if (a.minCoeff() < 0.0 || b.minCoeff() < 0.0) throw std::invalid_argument("negative mass");
  if (std::abs(a.sum() - 1.0) > 1e-9 || std::abs(b.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("pmf is not normalized");
}

// Basis tree over m row nodes and n column nodes (column j is node m + j).
struct Basis {
  int m, n;
  std::vector<std::pair<int, int>> cells;

  std::vector<std::vector<std::pair<int, int>>> adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(m + n));
    for (int k = 0; k < static_cast<int>(cells.size()); ++k) {
      auto [i, j] = cells[static_cast<size_t>(k)];
      adj[static_cast<size_t>(i)].push_back({m + j, k});
      adj[static_cast<size_t>(m + j)].push_back({i, k});
    }
    return adj;
  }
};

}  // namespace

TransportPlan exact_ot(const Vec& a_in, const Vec& b_in, const Mat& cost) {
  check_marginals(a_in, b_in, cost);
  const int m = static_cast<int>(a_in.size()), n = static_cast<int>(b_in.size());
  // put both marginals on exactly the same total
  Vec a = a_in / a_in.sum(), b = b_in / b_in.sum();

  Mat flow = Mat::Zero(m, n);
  Basis basis{m, n, {}};
  {
    // north-west corner; moves one index per step so the basis has m+n-1 cells
    Vec ra = a, rb = b;
    int i = 0, j = 0;
    for (;;) {
      const double x = std::min(ra(i), rb(j));
      flow(i, j) = x;
      ra(i) -= x;
      rb(j) -= x;
      basis.cells.push_back({i, j});
      if (i == m - 1 && j == n - 1) break;
      if (j == n - 1 || (i < m - 1 && ra(i) <= rb(j)))
        ++i;
      else
        ++j;
    }
  }

  const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
  const double rc_tol = 1e-12 * scale;
  std::vector<char> is_basic(static_cast<size_t>(m * n), 0);
  for (auto [i, j] : basis.cells) is_basic[static_cast<size_t>(i * n + j)] = 1;

  int iter = 0, degenerate_run = 0;
  const int max_iter = 50 * (m + n) * (m + n) + 1000;
  for (; iter < max_iter; ++iter) {
    const auto adj = basis.adjacency();
    // potentials: u_i + v_j = C_ij on basic cells
    std::vector<double> pot(static_cast<size_t>(m + n), 0.0);
    std::vector<char> seen(static_cast<size_t>(m + n), 0);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop();
      for (auto [v, k] : adj[static_cast<size_t>(u)]) {
        if (seen[static_cast<size_t>(v)]) continue;
        auto [ci, cj] = basis.cells[static_cast<size_t>(k)];
        pot[static_cast<size_t>(v)] = cost(ci, cj) - pot[static_cast<size_t>(u)];
        seen[static_cast<size_t>(v)] = 1;
        bfs.push(v);
      }
    }

    // entering cell: most negative reduced cost, first negative during long degenerate runs
    int ei = -1, ej = -1;
    double best = -rc_tol;
    for (int i = 0; i < m && !(degenerate_run > 50 && ei >= 0); ++i)
      for (int j = 0; j < n; ++j) {
        if (is_basic[static_cast<size_t>(i * n + j)]) continue;
        const double rc = cost(i, j) - pot[static_cast<size_t>(i)] - pot[static_cast<size_t>(m + j)];
        if (rc < best) {
          best = rc;
          ei = i;
          ej = j;
          if (degenerate_run > 50) break;
        }
      }
    if (ei < 0) break;

    // tree path from column node back to row node closes the cycle
    std::vector<int> parent(static_cast<size_t>(m + n), -1), via(static_cast<size_t>(m + n), -1);
    std::vector<char> vis(static_cast<size_t>(m + n), 0);
    std::queue<int> q;
    q.push(ei);
    vis[static_cast<size_t>(ei)] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (u == m + ej) break;
      for (auto [v, k] : adj[static_cast<size_t>(u)]) {
        if (vis[static_cast<size_t>(v)]) continue;
        vis[static_cast<size_t>(v)] = 1;
        parent[static_cast<size_t>(v)] = u;
        via[static_cast<size_t>(v)] = k;
        q.push(v);
      }
    }
    // walking back from column ej: cells alternate -, +, -, ...
    std::vector<int> path;
    for (int v = m + ej; v != ei; v = parent[static_cast<size_t>(v)]) path.push_back(via[static_cast<size_t>(v)]);
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    for (size_t t = 0; t < path.size(); t += 2) {
      auto [ci, cj] = basis.cells[static_cast<size_t>(path[t])];
      if (flow(ci, cj) < theta) {
        theta = flow(ci, cj);
        leave = path[t];
      }
    }
    degenerate_run = theta > 0.0 ? 0 : degenerate_run + 1;
    flow(ei, ej) += theta;
    for (size_t t = 0; t < path.size(); ++t) {
      auto [ci, cj] = basis.cells[static_cast<size_t>(path[t])];
      flow(ci, cj) += (t % 2 == 0) ? -theta : theta;
      if (flow(ci, cj) < 0.0) flow(ci, cj) = 0.0;
    }
    auto [li, lj] = basis.cells[static_cast<size_t>(leave)];
    flow(li, lj) = 0.0;
    is_basic[static_cast<size_t>(li * n + lj)] = 0;
    is_basic[static_cast<size_t>(ei * n + ej)] = 1;
    basis.cells[static_cast<size_t>(leave)] = {ei, ej};
  }

  TransportPlan plan;
  plan.method = OTMethod::Exact;
  plan.coupling = flow;
  plan.cost = (flow.array() * cost.array()).sum();
  plan.iterations = iter;
  plan.converged = iter < max_iter;
  return plan;
}

TransportPlan exact_discrete_ot(const DiscreteDistribution& source, const DiscreteDistribution& target, double p) {
  validate_pmf(source);
  validate_pmf(target);
  return exact_ot(source.pmf, target.pmf, ground_cost(source, target, p));
}

double univariate_ot(std::vector<double> x, std::vector<double> y, double p) {
  if (x.size() != y.size()) throw std::invalid_argument("univariate OT needs equal sample counts");
  if (p < 1.0) throw std::invalid_argument("order p must be >= 1");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i] - y[i]), p);
  return std::pow(s, 1.0 / p);
}

Mat round_to_marginals(const Mat& plan, const Vec& a, const Vec& b) {
  Mat F = plan;
  const Vec r = F.rowwise().sum();
  for (Eigen::Index i = 0; i < F.rows(); ++i)
    if (r(i) > a(i)) F.row(i) *= a(i) / r(i);
  const Vec c = F.colwise().sum().transpose();
  for (Eigen::Index j = 0; j < F.cols(); ++j)
    if (c(j) > b(j)) F.col(j) *= b(j) / c(j);
  const Vec er = (a - F.rowwise().sum()).cwiseMax(0.0);
  const Vec ec = (b - F.colwise().sum().transpose()).cwiseMax(0.0);
  const double mass = er.sum();
  if (mass > 0.0) F += er * ec.transpose() / mass;
  return F;
}

namespace {

double log_sum_exp(const Eigen::Ref<const Vec>& v) {
  const double mx = v.maxCoeff();
  if (!std::isfinite(mx)) return mx;
  return mx + std::log((v.array() - mx).exp().sum());
}

Vec safe_log(const Vec& v) {
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out(i) = v(i) > 0.0 ? std::log(v(i)) : -std::numeric_limits<double>::infinity();
  return out;
}

Mat plan_from_potentials(const Vec& f, const Vec& g, const Mat& cost, double eps) {
  Mat P(cost.rows(), cost.cols());
  for (Eigen::Index i = 0; i < P.rows(); ++i)
    for (Eigen::Index j = 0; j < P.cols(); ++j) {
      const double e = (f(i) + g(j) - cost(i, j)) / eps;
      P(i, j) = std::isfinite(e) ? std::exp(e) : 0.0;
    }
  return P;
}

}  // namespace

TransportPlan sinkhorn(const Vec& a, const Vec& b, const Mat& cost, double epsilon, const EntropicOptions& opt) {
  check_marginals(a, b, cost);
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  const Vec la = safe_log(a), lb = safe_log(b);
  const Eigen::Index m = a.size(), n = b.size();
  Vec f = Vec::Zero(m), g = Vec::Zero(n);

  // epsilon-scaling: anneal from the cost scale down to the target, warm-starting potentials
  const double cmax = std::max(cost.cwiseAbs().maxCoeff(), epsilon);
  std::vector<double> schedule;
  for (double e = cmax; e > epsilon; e *= 0.5) schedule.push_back(e);
  schedule.push_back(epsilon);

  int iters = 0;
  bool converged = false;
  Vec tmp_n(n), tmp_m(m);
  for (size_t s = 0; s < schedule.size(); ++s) {
    const double eps = schedule[s];
    const bool last = s + 1 == schedule.size();
    const int stage_cap = last ? opt.max_iters - iters : 200;
    for (int it = 0; it < stage_cap; ++it, ++iters) {
      for (Eigen::Index i = 0; i < m; ++i) {
        if (!std::isfinite(la(i))) {
          f(i) = -std::numeric_limits<double>::infinity();
          continue;
        }
        for (Eigen::Index j = 0; j < n; ++j) tmp_n(j) = (g(j) - cost(i, j)) / eps;
        f(i) = eps * la(i) - eps * log_sum_exp(tmp_n);
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!std::isfinite(lb(j))) {
          g(j) = -std::numeric_limits<double>::infinity();
          continue;
        }
        for (Eigen::Index i = 0; i < m; ++i) tmp_m(i) = (f(i) - cost(i, j)) / eps;
        g(j) = eps * lb(j) - eps * log_sum_exp(tmp_m);
      }
      if (it % 10 == 9) {
        const Mat P = plan_from_potentials(f, g, cost, eps);
        const double err = (P.rowwise().sum() - a).lpNorm<1>();
        if (err <= opt.tol) {
          converged = last;
          break;
        }
      }
    }
    if (iters >= opt.max_iters) break;
  }

  const Mat P = plan_from_potentials(f, g, cost, epsilon);
  TransportPlan plan;
  plan.method = OTMethod::Sinkhorn;
  plan.parameter = epsilon;
  plan.coupling = round_to_marginals(P, a, b);
  plan.cost = (plan.coupling.array() * cost.array()).sum();
  plan.iterations = iters;
  plan.converged = converged;
  return plan;
}

TransportPlan sinkhorn(const DiscreteDistribution& source, const DiscreteDistribution& target, double epsilon,
                       const EntropicOptions& opt, double p) {
  return sinkhorn(source.pmf, target.pmf, ground_cost(source, target, p), epsilon, opt);
}

TransportPlan ipot(const Vec& a, const Vec& b, const Mat& cost, double beta, const IpotOptions& opt) {
  check_marginals(a, b, cost);
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  if (opt.inner_iters < 1) throw std::invalid_argument("inner_iters must be >= 1");
  const Vec la = safe_log(a), lb = safe_log(b);
  const Eigen::Index m = a.size(), n = b.size();

  // log of the current plan, started from the all-ones matrix
  Mat logT = Mat::Zero(m, n);
  Vec lv = Vec::Zero(n), lu(m);
  Vec tmp_n(n), tmp_m(m);
  double prev = std::numeric_limits<double>::infinity();
  int t = 0;
  bool converged = false;
  Mat T;
  for (; t < opt.max_iters; ++t) {
    const Mat logQ = logT - cost / beta;
    for (int l = 0; l < opt.inner_iters; ++l) {
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) tmp_n(j) = logQ(i, j) + lv(j);
        lu(i) = la(i) - log_sum_exp(tmp_n);
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < m; ++i) tmp_m(i) = logQ(i, j) + lu(i);
        lv(j) = lb(j) - log_sum_exp(tmp_m);
      }
    }
    logT = (logQ.colwise() + lu).rowwise() + lv.transpose();
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (std::isnan(logT(i, j))) logT(i, j) = -std::numeric_limits<double>::infinity();
    T = logT.array().exp().matrix();
    const double c = (T.array() * cost.array()).sum();
    if (std::abs(c - prev) <= opt.tol * std::max(1.0, std::abs(c)) &&
        (T.rowwise().sum() - a).lpNorm<1>() <= 1e-9) {
      converged = true;
      ++t;
      break;
    }
    prev = c;
  }

  TransportPlan plan;
  plan.method = OTMethod::IPOT;
  plan.parameter = beta;
  plan.coupling = round_to_marginals(T, a, b);
  plan.cost = (plan.coupling.array() * cost.array()).sum();
  plan.iterations = t;
  plan.converged = converged;
  return plan;
}

TransportPlan ipot(const DiscreteDistribution& source, const DiscreteDistribution& target, double beta,
                   const IpotOptions& opt, double p) {
  return ipot(source.pmf, target.pmf, ground_cost(source, target, p), beta, opt);
}

}  // namespace wassarb
