#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "io.hpp"
#include "wassarb/extremal_dist.hpp"
#include "wassarb/fixtures.hpp"
#include "wassarb/nearest_na.hpp"
#include "wassarb/pricing_apps.hpp"
#include "wassarb/radius.hpp"
#include "wassarb/wasserstein.hpp"

namespace wassarb::cli {

using nlohmann::json;

namespace {

// Settings shared by all commands; config file first, then explicit flags.
struct Settings {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<int> starts, iters, polish_iters, threads;
  std::optional<double> temp_start, temp_end, big_m, epsilon;
};

std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  std::istringstream in(read_file(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(Settings& s, const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    try {
      if (k == "seed") { if (!s.seed) s.seed = std::stoull(v); }
      else if (k == "format") { if (!s.format) s.format = v; }
      else if (k == "out") { if (!s.out) s.out = v; }
      else if (k == "starts") { if (!s.starts) s.starts = std::stoi(v); }
      else if (k == "max_iters") { if (!s.iters) s.iters = std::stoi(v); }
      else if (k == "polish_iters") { if (!s.polish_iters) s.polish_iters = std::stoi(v); }
      else if (k == "threads") { if (!s.threads) s.threads = std::stoi(v); }
      else if (k == "temp_start") { if (!s.temp_start) s.temp_start = std::stod(v); }
      else if (k == "temp_end") { if (!s.temp_end) s.temp_end = std::stod(v); }
      else if (k == "big_m") { if (!s.big_m) s.big_m = std::stod(v); }
      else if (k == "epsilon") { if (!s.epsilon) s.epsilon = std::stod(v); }
      else throw ParseError("unknown config key: " + k);
    } catch (const std::logic_error&) {
      throw ParseError("config key " + k + ": bad value '" + v + "'");
    }
  }
}

SearchConfig search_config(const Settings& s) {
  SearchConfig c;
  if (s.seed) c.seed = *s.seed;
  if (s.starts) c.starts = *s.starts;
  if (s.iters) c.max_iters = *s.iters;
  if (s.polish_iters) c.polish_iters = *s.polish_iters;
  if (s.threads) c.threads = *s.threads;
  if (s.temp_start) c.temp_start = *s.temp_start;
  if (s.temp_end) c.temp_end = *s.temp_end;
  if (s.big_m) c.feas.big_m = *s.big_m;
  if (s.epsilon) c.feas.epsilon = *s.epsilon;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("solver settings: ") + e.what());
  }
  return c;
}

bool want_json(const Settings& s) {
  const std::string f = s.format.value_or("json");
  if (f != "json" && f != "csv") throw ParseError("format must be csv or json");
  return f == "json";
}

void emit(const Settings& s, std::ostream& out, const std::string& text) {
  if (s.out)
    write_file(*s.out, text);
  else
    out << text;
}

json vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json mat_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i).transpose()));
  return rows;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

RadiusSide parse_side(const std::string& s) {
  if (s == "na-weak" || s == "weak") return RadiusSide::NAWeak;
  if (s == "na-strong" || s == "strong") return RadiusSide::NAStrong;
  if (s == "sa-best") return RadiusSide::SABest;
  if (s == "sa-worst") return RadiusSide::SAWorst;
  throw ParseError("unknown side: " + s + " (na-weak, na-strong, sa-best, sa-worst)");
}

std::string side_name(RadiusSide s) {
  switch (s) {
    case RadiusSide::NAWeak: return "na-weak";
    case RadiusSide::NAStrong: return "na-strong";
    case RadiusSide::SABest: return "sa-best";
    case RadiusSide::SAWorst: return "sa-worst";
  }
  return "?";
}

struct ScenarioSource {
  std::string fixture, path;
  bool s0_row = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--fixture", fixture, "shipped scenario fixture");
    cmd->add_option("--scenarios", path, "scenario CSV (header of asset names)");
    cmd->add_flag("--s0-row", s0_row, "first data row holds the time-0 prices (default: column means)");
  }

  ScenarioSet load() const {
    if (!fixture.empty() && !path.empty()) throw ParseError("give either --fixture or --scenarios, not both");
    if (!fixture.empty()) {
      try {
        return load_fixture(fixture);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    }
    if (path.empty()) throw ParseError("missing --fixture or --scenarios");
    return load_scenarios(read_file(path), s0_row ? S0Mode::ExplicitRow : S0Mode::ArithmeticMean);
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust arbitrage analysis under Wasserstein uncertainty", "wassarb"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings st;
  std::string config_path;
  app.add_option("--config", config_path, "key=value settings file");
  app.add_option("--seed", st.seed, "random seed");
  app.add_option("--format", st.format, "csv or json (default json)");
  app.add_option("--out", st.out, "output file (default stdout)");
  app.add_option("--starts", st.starts, "search starts");
  app.add_option("--iters", st.iters, "iterations per start");
  app.add_option("--threads", st.threads, "worker threads (default WASSARB_THREADS or all cores)");

  // curve
  auto* curve = app.add_subcommand("curve", "dual value against radius");
  ScenarioSource curve_src;
  curve_src.add(curve);
  std::string curve_side = "na-strong", curve_deltas;
  curve->add_option("--side", curve_side, "na-weak, na-strong, sa-best, sa-worst");
  curve->add_option("--deltas", curve_deltas, "radii: list a,b,c or a:b:xF or a:b:nK")->required();

  // radius
  auto* radius = app.add_subcommand("radius", "critical radius by binary search");
  ScenarioSource radius_src;
  radius_src.add(radius);
  std::string radius_side = "na-strong";
  std::optional<double> radius_alpha, radius_dmax;
  double radius_tol = 0.05;
  radius->add_option("--side", radius_side, "na-weak, na-strong, sa-best, sa-worst");
  radius->add_option("--alpha", radius_alpha, "level (1 for na sides)");
  radius->add_option("--tol", radius_tol, "relative bracket width");
  radius->add_option("--delta-max", radius_dmax, "give up above this radius");

  // dist
  auto* dist = app.add_subcommand("dist", "extremal distribution for a portfolio");
  ScenarioSource dist_src;
  dist_src.add(dist);
  std::string dist_w, dist_case = "best";
  double dist_delta = 0.0;
  dist->add_option("--w", dist_w, "portfolio weights a,b,...")->required();
  dist->add_option("--delta", dist_delta, "radius")->required();
  dist->add_option("--case", dist_case, "best or worst");

  // nearest
  auto* nearest = app.add_subcommand("nearest", "nearest arbitrage-free payoff matrix");
  std::string near_fixture, near_p, near_x, near_betas = "1:1024:x2";
  double near_plateau = 1e-6, near_r0 = 0.0;
  bool near_nss = false;
  nearest->add_option("--fixture", near_fixture, "binomial, binomial2, russell_sp, index_basket");
  nearest->add_option("--p", near_p, "CSV with one price per row (header line first)");
  nearest->add_option("--X", near_x, "payoff CSV, one asset per row (header line first)");
  nearest->add_option("--betas", near_betas, "penalty schedule");
  nearest->add_option("--plateau-tol", near_plateau, "relative plateau tolerance");
  nearest->add_flag("--no-short-sales", near_nss, "hinge penalty with a probability vector");
  nearest->add_option("--r0", near_r0, "risk-free rate (no-short-sales variant)");

  // call
  auto* call = app.add_subcommand("call", "robust European call price");
  std::string call_samples, call_values;
  double call_strike = 0.0, call_delta = 0.0;
  call->add_option("--samples", call_samples, "CSV with one terminal price per row (header line first)");
  call->add_option("--values", call_values, "terminal prices a,b,...");
  call->add_option("--strike", call_strike, "strike")->required();
  call->add_option("--delta", call_delta, "radius under the quadratic cost (x-y)^2/2")->required();

  // ot
  auto* ot = app.add_subcommand("ot", "optimal transport between two distributions");
  std::string ot_a, ot_b, ot_method = "exact";
  double ot_eps = 1e-2, ot_beta = 1.0, ot_p = 1.0;
  ot->add_option("--a", ot_a, "source distribution CSV (prob,x1,...)")->required();
  ot->add_option("--b", ot_b, "target distribution CSV (prob,x1,...)")->required();
  ot->add_option("--method", ot_method, "exact, sinkhorn, ipot");
  ot->add_option("--epsilon", ot_eps, "Sinkhorn regularization");
  ot->add_option("--beta", ot_beta, "IPOT proximal weight");
  ot->add_option("--order", ot_p, "ground cost exponent");

  // markowitz
  auto* mk = app.add_subcommand("markowitz", "robust mean-variance dual objective");
  std::string mk_returns, mk_phi;
  double mk_delta = 0.0, mk_p = 2.0;
  mk->add_option("--returns", mk_returns, "CSV of gross returns, header of asset names")->required();
  mk->add_option("--phi", mk_phi, "weights a,b,... summing to 1")->required();
  mk->add_option("--delta", mk_delta, "radius");
  mk->add_option("--p-norm", mk_p, "norm order (inf allowed)");

  // fixture
  auto* fx = app.add_subcommand("fixture", "print a shipped scenario fixture as CSV");
  std::string fx_name;
  fx->add_option("--name", fx_name, "fixture name")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kParseError;
  }

  try {
    if (!config_path.empty()) apply_config(st, read_config(config_path));
    const bool as_json = want_json(st);

    if (*curve) {
      const ScenarioSet scen = curve_src.load();
      const RadiusSide side = parse_side(curve_side);
      const std::vector<double> deltas = parse_schedule(curve_deltas);
      const CurveResult c = sweep_curve(scen, side, deltas, search_config(st));
      for (const auto& w : c.warnings) err << "warning: " << w << "\n";
      std::string csv = "delta,value\n";
      json j{{"side", side_name(side)}, {"points", json::array()}, {"warnings", c.warnings}};
      for (const auto& p : c.points) {
        csv += fmt(p.delta) + "," + fmt(p.value) + "\n";
        j["points"].push_back({{"delta", p.delta}, {"value", p.value}, {"w", vec_json(p.w)}});
      }
      emit(st, out, as_json ? dump(j) : csv);
      // the portfolios do not fit the two-column CSV; keep them next to it
      if (!as_json && st.out) write_file(*st.out + ".json", dump(j));
      return kOk;
    }

    if (*radius) {
      const ScenarioSet scen = radius_src.load();
      const RadiusSide side = parse_side(radius_side);
      if (side == RadiusSide::SABest && !radius_alpha) throw ParseError("sa-best needs --alpha in (0, 1)");
      double alpha = radius_alpha.value_or(side == RadiusSide::SAWorst ? 0.0 : 1.0);
      RadiusConfig rc;
      rc.search = search_config(st);
      rc.tol = radius_tol;
      rc.delta_max = radius_dmax;
      const RadiusResult r = critical_radius(scen, side, alpha, rc);
      json j{{"side", side_name(side)}, {"alpha", r.alpha}, {"delta_star", r.delta_star}, {"lo", r.lo},
             {"hi", r.hi}, {"attained", r.attained}, {"w", vec_json(r.w_at_star)}};
      std::string csv = "side,alpha,delta_star,lo,hi,attained\n" + side_name(side) + "," + fmt(r.alpha) + "," +
                        fmt(r.delta_star) + "," + fmt(r.lo) + "," + fmt(r.hi) + "," + (r.attained ? "1" : "0") + "\n";
      emit(st, out, as_json ? dump(j) : csv);
      return kOk;
    }

    if (*dist) {
      const ScenarioSet scen = dist_src.load();
      const std::vector<double> wl = parse_list(dist_w);
      const Vec w = Vec::Map(wl.data(), static_cast<Eigen::Index>(wl.size()));
      if (dist_case != "best" && dist_case != "worst") throw ParseError("case must be best or worst");
      const bool best = dist_case == "best";
      const DiscreteDistribution d =
          best ? best_case_distribution(w, scen, dist_delta) : worst_case_distribution(w, scen, dist_delta);
      json pts = json::array();
      for (int k = 0; k < d.size(); ++k)
        pts.push_back({{"prob", d.pmf(k)},
                       {"x", vec_json(d.support.row(k).transpose())},
                       {"origin", d.origin[static_cast<size_t>(k)]},
                       {"moved", d.moved_distance(k)}});
      json j{{"case", dist_case},
             {"delta", dist_delta},
             {"w", vec_json(w)},
             {"dual_value", best ? dual_value_best(w, scen, dist_delta).value : dual_value_worst(w, scen, dist_delta).value},
             {"transport_cost", d.transport_cost},
             {"budget_used", d.budget_used},
             {"split_origin", d.split_origin},
             {"split_rule", d.split_rule},
             {"points", pts}};
      emit(st, out, as_json ? dump(j) : distribution_to_csv(d));
      return kOk;
    }

    if (*nearest) {
      NearestNAProblem prob;
      if (!near_fixture.empty()) {
        try {
          prob = nearest_fixture(near_fixture);
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what());
        }
      } else {
        if (near_p.empty() || near_x.empty()) throw ParseError("nearest needs --fixture or both --p and --X");
        const auto prow = read_numeric_csv(read_file(near_p));
        const auto xrows = read_numeric_csv(read_file(near_x));
        prob.p.resize(static_cast<Eigen::Index>(prow.size()));
        for (size_t i = 0; i < prow.size(); ++i) {
          if (prow[i].size() != 1) throw ParseError("price CSV must have one column");
          prob.p(static_cast<Eigen::Index>(i)) = prow[i][0];
        }
        prob.X.resize(static_cast<Eigen::Index>(xrows.size()), static_cast<Eigen::Index>(xrows[0].size()));
        for (size_t i = 0; i < xrows.size(); ++i)
          for (size_t j = 0; j < xrows[i].size(); ++j)
            prob.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = xrows[i][j];
      }
      if (near_nss) {
        prob.mode = ShortSales::Forbidden;
        prob.r0 = near_r0;
      }
      const TightBoundResult tb = tight_bound(prob, parse_schedule(near_betas), near_plateau);
      for (const auto& w : tb.warnings) err << "warning: " << w << "\n";
      const auto& r = tb.result;
      json sweep = json::array();
      std::string csv = "beta,objective,distance,residual\n";
      for (const auto& s : tb.sweep) {
        sweep.push_back({{"beta", s.beta}, {"objective", s.objective}, {"distance", s.distance}, {"residual", s.residual}});
        csv += fmt(s.beta) + "," + fmt(s.objective) + "," + fmt(s.distance) + "," + fmt(s.residual) + "\n";
      }
      json j{{"delta", r.objective},     {"distance", r.distance}, {"beta", r.beta},
             {"residual", r.residual},   {"q", vec_json(r.q)},     {"X_tilde", mat_json(r.X_tilde)},
             {"plateau", tb.plateau_reached}, {"sweep", sweep}};
      emit(st, out, as_json ? dump(j) : csv);
      return kOk;
    }

    if (*call) {
      RobustCallSpec spec;
      if (!call_samples.empty() == !call_values.empty()) throw ParseError("give exactly one of --samples or --values");
      if (!call_values.empty()) {
        spec.samples = parse_list(call_values);
      } else {
        for (const auto& r : read_numeric_csv(read_file(call_samples))) {
          if (r.size() != 1) throw ParseError("sample CSV must have one column");
          spec.samples.push_back(r[0]);
        }
      }
      spec.strike = call_strike;
      spec.delta_alpha = call_delta;
      const RobustCallResult r = robust_call(spec);
      json j{{"price", r.price}, {"empirical", empirical_call(spec.samples, spec.strike)},
             {"lambda_star", std::isfinite(r.lambda_star) ? json(r.lambda_star) : json(nullptr)}};
      emit(st, out, as_json ? dump(j) : "price,lambda_star\n" + fmt(r.price) + "," + fmt(r.lambda_star) + "\n");
      return kOk;
    }

    if (*ot) {
      const DiscreteDistribution a = read_distribution_csv(read_file(ot_a));
      const DiscreteDistribution b = read_distribution_csv(read_file(ot_b));
      TransportPlan plan;
      if (ot_method == "exact")
        plan = exact_discrete_ot(a, b, ot_p);
      else if (ot_method == "sinkhorn")
        plan = sinkhorn(a, b, ot_eps, {}, ot_p);
      else if (ot_method == "ipot")
        plan = ipot(a, b, ot_beta, {}, ot_p);
      else
        throw ParseError("method must be exact, sinkhorn or ipot");
      json j{{"method", ot_method}, {"cost", plan.cost}, {"iterations", plan.iterations},
             {"converged", plan.converged}, {"coupling", mat_json(plan.coupling)}};
      emit(st, out, as_json ? dump(j) : "method,cost\n" + ot_method + "," + fmt(plan.cost) + "\n");
      return kOk;
    }

    if (*mk) {
      const auto rows = read_numeric_csv(read_file(mk_returns));
      MarkowitzSpec spec;
      spec.returns.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
      for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
          spec.returns(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      const auto phi = parse_list(mk_phi);
      spec.phi = Vec::Map(phi.data(), static_cast<Eigen::Index>(phi.size()));
      spec.delta = mk_delta;
      spec.p_norm = mk_p;
      const double v = robust_markowitz_objective(spec);
      emit(st, out, as_json ? dump(json{{"objective", v}}) : "objective\n" + fmt(v) + "\n");
      return kOk;
    }

    if (*fx) {
      try {
        emit(st, out, scenario_fixture(fx_name).csv);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace wassarb::cli
