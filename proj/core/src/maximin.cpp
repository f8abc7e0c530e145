#include "wassarb/maximin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

namespace wassarb {

void SearchConfig::validate() const {
  if (starts < 1) throw std::invalid_argument("starts must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(temp_start > 0.0) || !(temp_end > 0.0) || temp_end > temp_start)
    throw std::invalid_argument("temperatures must satisfy 0 < end <= start");
  if (!(expand > 1.0) || !(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("bad step factors");
  if (!(feas.epsilon > 0.0) || !(feas.big_m > feas.epsilon)) throw std::invalid_argument("need M > epsilon > 0");
  if (polish_iters < 0) throw std::invalid_argument("polish_iters must be >= 0");
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WASSARB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double smoothed_dual_value(const Vec& w, const ScenarioSet& scen, double delta, Side side, double temperature) {
  const Vec costs = scenario_costs(w, scen);
  const Vec dist = scen.scenarios() * w / w.norm();
  const int N = scen.n_scenarios();
  // weight of each scenario on the side that pays transport
  Vec pay(N);
  for (int i = 0; i < N; ++i) {
    const double up = logistic(dist(i) / temperature);
    pay(i) = side == Side::BestCase ? 1.0 - up : up;
  }
  std::vector<int> order(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) order[static_cast<size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return costs(a) < costs(b); });

  // H(lambda) - const over candidates {0} u {1/c_k}; terms with c_i < c_k give
  // pay_i (1 - c_i/c_k), the rest give 0.
  const double total_pay = pay.sum();
  // lambda = 0: every [1 - 0]^+ = 1, so the transport part is total_pay / N
  double best_h = total_pay / N;
  double pay_below = 0.0, paycost_below = 0.0;
  size_t k = 0;
  while (k < order.size()) {
    const double ck = costs(order[k]);
    size_t end = k;
    while (end < order.size() && costs(order[end]) == ck) ++end;
    if (ck > 0.0) {
      const double h = delta / ck + (pay_below - paycost_below / ck) / N;
      best_h = std::min(best_h, h);
    }
    for (size_t t = k; t < end; ++t) {
      pay_below += pay(order[t]);
      paycost_below += pay(order[t]) * costs(order[t]);
    }
    k = end;
  }
  // best case: satisfied mass plus transport part; worst case: minus the H^wc minimum
  if (side == Side::BestCase) return (N - total_pay) / N + best_h;
  return total_pay / N - best_h;
}

namespace {

// Maps search coordinates to admissible weights.
class Slice {
 public:
  Slice(const ScenarioSet& scen, Admissibility cls, const std::optional<PortfolioRestrictions>& r,
        const FeasibilityConstants& fc)
      : scen_(scen), cls_(cls), fc_(fc) {
    const int n = scen.n_assets();
    const Vec& s0 = scen.s0();
    if (r && !r->trivial(n, fc.big_m)) {
      restr_ = *r;
      if (restr_->cardinality && *restr_->cardinality < 1) throw Infeasible("cardinality must be at least 1");
      if (restr_->cardinality && *restr_->cardinality > n) restr_->cardinality = n;
      if (!restr_->short_sale_limits.empty() && static_cast<int>(restr_->short_sale_limits.size()) != n)
        throw std::invalid_argument("short-sale limit count must equal number of assets");
      if (restr_->max_position && *restr_->max_position < restr_->min_position)
        throw Infeasible("max position below min position");
      dim_ = n;
      return;
    }
    if (cls == Admissibility::Weak && n < 2) throw Infeasible("a single asset admits no zero-cost portfolio");
    // orthonormal basis of the complement of s0
    const Mat s0_col = s0;
    Eigen::HouseholderQR<Mat> qr(s0_col);
    const Mat Q = qr.householderQ() * Mat::Identity(n, n);
    basis_ = Q.rightCols(n - 1);
    anchor_ = -s0 / s0.squaredNorm();
    dim_ = n - 1;
  }

  int dim() const { return dim_; }
  bool restricted() const { return restr_.has_value(); }
  // scale used for relative step floors
  double scale(const Vec& y) const {
    if (restricted()) return std::max(y.norm(), fc_.epsilon);
    if (cls_ == Admissibility::Weak) return 1.0;
    return std::max(y.norm(), anchor_.norm());
  }

  std::optional<Vec> map(const Vec& y) const {
    if (restricted()) return project(y);
    if (cls_ == Admissibility::Weak) {
      Vec w = basis_ * y;
      const double mx = w.cwiseAbs().maxCoeff();
      if (!(mx > 0.0) || !std::isfinite(mx)) return std::nullopt;
      return Vec(w / mx);
    }
    Vec w = anchor_ + basis_ * y;
    if (w.cwiseAbs().maxCoeff() > fc_.big_m + 1e-12 * std::max(1.0, fc_.big_m)) return std::nullopt;
    return w;
  }

  // After a move, keep coordinates tidy (the weak sphere is scale-free).
  void normalize(Vec& y) const {
    if (!restricted() && cls_ == Admissibility::Weak && y.norm() > 0.0) y /= y.norm();
  }

  double initial_step(const Vec& y) const {
    if (restricted()) return 0.5 * std::max(y.norm(), fc_.epsilon);
    if (cls_ == Admissibility::Weak) return 0.5;
    return 0.5 * std::max(y.norm(), anchor_.norm());
  }

  std::optional<Vec> random_start(std::mt19937_64& rng) const {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif;
    const int n = scen_.n_assets();
    for (int attempt = 0; attempt < 64; ++attempt) {
      if (restricted()) {
        Vec u(n);
        for (int j = 0; j < n; ++j) u(j) = gauss(rng);
        const Vec& s0 = scen_.s0();
        double t = std::exp(std::log(fc_.epsilon) + unif(rng) * (std::log(fc_.big_m) - std::log(fc_.epsilon)));
        Vec w;
        if (cls_ == Admissibility::Strong) {
          double c = u.dot(s0);
          if (c == 0.0) continue;
          if (c > 0.0) u = -u, c = -c;
          w = u * (t / -c);
        } else {
          u -= (u.dot(s0) / s0.squaredNorm()) * s0;
          if (u.cwiseAbs().maxCoeff() == 0.0) continue;
          w = u * (t / u.cwiseAbs().maxCoeff());
        }
        if (auto m = project(w)) return *m;
        continue;
      }
      Vec u(dim_);
      for (int j = 0; j < dim_; ++j) u(j) = gauss(rng);
      if (u.norm() == 0.0) continue;
      u /= u.norm();
      if (cls_ == Admissibility::Weak) return u;
      const double lo = std::log(1e-2 * anchor_.norm()), hi = std::log(fc_.big_m);
      double r = std::exp(lo + unif(rng) * (hi - lo));
      for (int k = 0; k < 80; ++k, r *= 0.5)
        if (map(u * r)) return Vec(u * r);
    }
    return std::nullopt;
  }

  Vec origin() const { return Vec::Zero(dim_); }

  std::optional<Vec> from_weights(const Vec& w) const {
    if (w.size() != scen_.n_assets() || !w.allFinite() || w.norm() == 0.0) return std::nullopt;
    if (restricted()) return project(w);
    if (cls_ == Admissibility::Weak) {
      Vec y = basis_.transpose() * w;
      if (y.norm() == 0.0) return std::nullopt;
      return Vec(y / y.norm());
    }
    const double c = w.dot(scen_.s0());
    if (!(c < 0.0)) return std::nullopt;
    const Vec ws = w / -c;
    Vec y = basis_.transpose() * (ws - anchor_);
    // a point on the box face can round to just outside it; pull it in
    for (int k = 0; k < 8 && !map(y); ++k) y *= 1.0 - 1e-12 * std::pow(10.0, k);
    if (!map(y)) return std::nullopt;
    return y;
  }

 private:
  std::optional<Vec> project(Vec w) const {
    const auto& r = *restr_;
    const int n = scen_.n_assets();
    const Vec& s0 = scen_.s0();
    const double wmax = std::min(r.max_position.value_or(fc_.big_m), fc_.big_m);
    const int card = r.cardinality.value_or(n);
    for (int round = 0; round < 8; ++round) {
      for (int j = 0; j < n; ++j) {
        double lo = -wmax;
        if (!r.short_sale_limits.empty()) lo = std::max(lo, r.short_sale_limits[static_cast<size_t>(j)]);
        w(j) = std::clamp(w(j), std::min(lo, wmax), wmax);
      }
      if (card < n) {
        std::vector<int> idx(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) idx[static_cast<size_t>(j)] = j;
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(w(a)) > std::abs(w(b)); });
        for (size_t k = static_cast<size_t>(card); k < idx.size(); ++k) w(idx[k]) = 0.0;
      }
      if (r.min_position > 0.0)
        for (int j = 0; j < n; ++j) {
          const double a = std::abs(w(j));
          if (a >= fc_.epsilon && a < r.min_position)
            w(j) = a >= 0.5 * r.min_position ? std::copysign(r.min_position, w(j)) : 0.0;
        }
      for (const auto& g : r.allocation_caps) {
        double e = 0.0;
        for (int j : g.assets) e += w(j) * s0(j);
        if (std::abs(e) > g.cap)
          for (int j : g.assets) w(j) *= g.cap / std::abs(e);
      }
      // back onto the cost slice along the held coordinates
      const double c = w.dot(s0);
      double target = 0.0;
      if (cls_ == Admissibility::Strong)
        target = std::clamp(c, -fc_.big_m * (1.0 - 1e-12), -fc_.epsilon * (1.0 + 1e-9));
      if (c != target) {
        Vec d = Vec::Zero(n);
        for (int j = 0; j < n; ++j)
          if (w(j) != 0.0) d(j) = s0(j);
        if (d.squaredNorm() == 0.0) d = s0;
        w += ((target - c) / d.squaredNorm()) * d;
      }
      Portfolio p{w, cls_, r};
      if (check_portfolio(p, s0, fc_).empty()) return w;
    }
    return std::nullopt;
  }

  const ScenarioSet& scen_;
  Admissibility cls_;
  FeasibilityConstants fc_;
  std::optional<PortfolioRestrictions> restr_;
  Mat basis_;
  Vec anchor_;
  int dim_ = 0;
};

struct StartOutcome {
  bool ok = false;
  Vec y;
  double value = -std::numeric_limits<double>::infinity();
  long evals = 0;
};

class Searcher {
 public:
  Searcher(const ScenarioSet& scen, double delta, Side side, const Slice& slice, const SearchConfig& cfg)
      : scen_(scen), delta_(delta), side_(side), slice_(slice), cfg_(cfg) {
    temp_scale_ = scen.dispersion();
    if (!(temp_scale_ > 0.0)) temp_scale_ = std::max(1e-3 * scen.mean_norm(), 1e-12);
  }

  double exact(const Vec& w, long& evals) const {
    ++evals;
    return side_ == Side::BestCase ? dual_value_best(w, scen_, delta_).value : dual_value_worst(w, scen_, delta_).value;
  }

  double smooth(const Vec& w, double t, long& evals) const {
    ++evals;
    return smoothed_dual_value(w, scen_, delta_, side_, t);
  }

  StartOutcome run(Vec y, std::mt19937_64& rng) const {
    StartOutcome out;
    auto w0 = slice_.map(y);
    if (!w0) return out;
    out.ok = true;
    out.y = y;
    out.value = exact(*w0, out.evals);
    const int dim = slice_.dim();
    if (dim == 0) return out;

    std::normal_distribution<double> gauss;
    auto random_basis = [&]() {
      Mat G(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) G(i, j) = gauss(rng);
      Eigen::HouseholderQR<Mat> qr(G);
      return Mat(qr.householderQ() * Mat::Identity(dim, dim));
    };

    double h = slice_.initial_step(y);
    const double h0 = h;
    const int iters = cfg_.max_iters;
    for (int it = 0; it < iters; ++it) {
      const double frac = iters > 1 ? static_cast<double>(it) / (iters - 1) : 1.0;
      const double t = temp_scale_ * cfg_.temp_start * std::pow(cfg_.temp_end / cfg_.temp_start, frac);
      const Vec w = *slice_.map(y);
      const double f_cur = smooth(w, t, out.evals);
      const Mat D = random_basis();
      double f_best = f_cur;
      Vec y_best;
      for (int k = 0; k < dim; ++k)
        for (double sgn : {1.0, -1.0}) {
          Vec yc = y + sgn * h * D.col(k);
          slice_.normalize(yc);
          auto wc = slice_.map(yc);
          if (!wc) continue;
          const double f = smooth(*wc, t, out.evals);
          if (f > f_best) {
            f_best = f;
            y_best = yc;
          }
        }
      if (y_best.size() > 0) {
        y = y_best;
        h *= cfg_.expand;
        const double v = exact(*slice_.map(y), out.evals);
        if (v > out.value) {
          out.value = v;
          out.y = y;
        }
      } else {
        h *= cfg_.shrink;
      }
      h = std::clamp(h, 1e-12 * slice_.scale(y), 4.0 * std::max(h0, slice_.scale(y)));
    }
    // compare the end of the annealing path too, it may sit on a plateau edge
    {
      const double v = exact(*slice_.map(y), out.evals);
      if (v > out.value) {
        out.value = v;
        out.y = y;
      }
    }
    polish(out, rng);
    return out;
  }

 private:
  // Exact-objective compass search around the best point with a shrinking stencil.
  void polish(StartOutcome& out, std::mt19937_64& rng) const {
    const int dim = slice_.dim();
    std::normal_distribution<double> gauss;
    double h = 0.1 * slice_.initial_step(out.y);
    for (int it = 0; it < cfg_.polish_iters; ++it) {
      if (h < 1e-12 * slice_.scale(out.y)) break;
      Mat D(dim, 2 * dim);
      D.leftCols(dim) = Mat::Identity(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) D(i, dim + j) = gauss(rng);
      bool moved = false;
      for (int k = 0; k < D.cols() && !moved; ++k) {
        const Vec d = D.col(k) / D.col(k).norm();
        for (double sgn : {1.0, -1.0}) {
          Vec yc = out.y + sgn * h * d;
          slice_.normalize(yc);
          auto wc = slice_.map(yc);
          if (!wc) continue;
          const double v = exact(*wc, out.evals);
          if (v > out.value) {
            out.value = v;
            out.y = yc;
            moved = true;
            break;
          }
        }
      }
      h *= moved ? cfg_.expand : cfg_.shrink;
    }
  }

  const ScenarioSet& scen_;
  double delta_;
  Side side_;
  const Slice& slice_;
  const SearchConfig& cfg_;
  double temp_scale_ = 1.0;
};

MaximinResult maximize(const ScenarioSet& scen, double delta, Admissibility cls, Side side,
                       const std::optional<PortfolioRestrictions>& restrictions, const SearchConfig& cfg) {
  cfg.validate();
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::invalid_argument("radius must be finite and >= 0");
  const Slice slice(scen, cls, restrictions, cfg.feas);
  const Searcher searcher(scen, delta, side, slice, cfg);

  const int total = cfg.starts + static_cast<int>(cfg.hot_starts.size());
  std::vector<StartOutcome> outcomes(static_cast<size_t>(total));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int s; (s = next.fetch_add(1)) < total;) {
      std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                        static_cast<std::uint32_t>(s)};
      std::mt19937_64 rng(seq);
      std::optional<Vec> y;
      if (s >= cfg.starts)
        y = slice.from_weights(cfg.hot_starts[static_cast<size_t>(s - cfg.starts)]);
      else if (s == 0 && !slice.restricted())
        y = slice.origin();
      else
        y = slice.random_start(rng);
      if (!y) continue;
      // origin of the weak sphere is not a direction; draw one instead
      if (!slice.map(*y)) y = slice.random_start(rng);
      if (!y) continue;
      outcomes[static_cast<size_t>(s)] = searcher.run(*y, rng);
    }
  };
  const int nthreads = std::min(resolve_thread_count(cfg.threads), total);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  MaximinResult res;
  res.admissibility = cls;
  res.side = side;
  int best = -1;
  for (int s = 0; s < total; ++s) {
    const auto& o = outcomes[static_cast<size_t>(s)];
    res.evaluations += o.evals;
    if (cfg.keep_trace) res.trace.push_back({s, s >= cfg.starts, o.value, o.evals});
    if (o.ok && (best < 0 || o.value > outcomes[static_cast<size_t>(best)].value)) best = s;
  }
  if (best < 0) throw Infeasible("no feasible portfolio found for the restriction set");
  res.w_opt = *slice.map(outcomes[static_cast<size_t>(best)].y);
  res.eval = side == Side::BestCase ? dual_value_best(res.w_opt, scen, delta) : dual_value_worst(res.w_opt, scen, delta);
  res.value = res.eval.value;
  return res;
}

}  // namespace

MaximinResult maximize_best_case(const ScenarioSet& scen, double delta, Admissibility cls,
                                 const std::optional<PortfolioRestrictions>& restrictions, const SearchConfig& cfg) {
  return maximize(scen, delta, cls, Side::BestCase, restrictions, cfg);
}

MaximinResult maximize_worst_case(const ScenarioSet& scen, double delta,
                                  const std::optional<PortfolioRestrictions>& restrictions, const SearchConfig& cfg) {
  return maximize(scen, delta, Admissibility::Strong, Side::WorstCase, restrictions, cfg);
}

}  // namespace wassarb
