// Command-line runner: sweeps the analytic engine and the Monte Carlo
// simulator over scenario parameters and writes CSV curves with JSON
// provenance sidecars.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ucin/analytics.hpp"
#include "ucin/config.hpp"
#include "ucin/curve.hpp"
#include "ucin/geometry.hpp"
#include "ucin/optimizer.hpp"
#include "ucin/rng.hpp"
#include "ucin/simulator.hpp"
#include "ucin/special.hpp"

using namespace ucin;

namespace {

// Options shared by every subcommand; dB-to-linear conversion happens here
// and only here.
struct CommonOpts {
  NetworkConfig cfg;
  double sinr_db = std::nan("");
  int feedback_bits = -1;
  std::string out;
  double sweep_from = std::nan("");
  double sweep_to = std::nan("");
  double sweep_step = std::nan("");

  void finalize() {
    if (!std::isnan(sinr_db)) cfg.sinr_threshold = std::pow(10.0, sinr_db / 10.0);
    if (feedback_bits >= 0) cfg.feedback_bits = feedback_bits;
    cfg.validate();
  }
  double from(double dflt) const { return std::isnan(sweep_from) ? dflt : sweep_from; }
  double to(double dflt) const { return std::isnan(sweep_to) ? dflt : sweep_to; }
  double step(double dflt) const { return std::isnan(sweep_step) ? dflt : sweep_step; }
};

std::shared_ptr<CommonOpts> add_common(CLI::App* cmd) {
  auto o = std::make_shared<CommonOpts>();
  cmd->add_option("--lambda-b", o->cfg.lambda_b, "BS density per unit area");
  cmd->add_option("--lambda-u", o->cfg.lambda_u, "user density per unit area");
  cmd->add_option("--m-antennas", o->cfg.m_antennas, "antennas per BS");
  cmd->add_option("--alpha", o->cfg.alpha, "path loss exponent");
  cmd->add_option("--sinr", o->cfg.sinr_threshold, "SIR threshold, linear");
  cmd->add_option("--sinr-db", o->sinr_db, "SIR threshold in dB (overrides --sinr)");
  cmd->add_option("--mu", o->cfg.mu, "nulling range coefficient");
  cmd->add_option("--feedback-bits", o->feedback_bits,
                  "limited feedback bits (omit for perfect CSI)");
  cmd->add_option("--window-side", o->cfg.window_side,
                  "simulation window side (<=0 targets 500 BSs)");
  cmd->add_option("--n-realizations", o->cfg.n_realizations,
                  "Monte Carlo realizations per point");
  cmd->add_option("--seed", o->cfg.seed, "master RNG seed");
  cmd->add_option("--out", o->out, "output CSV path")->required();
  cmd->add_option("--sweep-from", o->sweep_from, "sweep start");
  cmd->add_option("--sweep-to", o->sweep_to, "sweep end (inclusive)");
  cmd->add_option("--sweep-step", o->sweep_step, "sweep step");
  return o;
}

std::string sidecar_path(const std::string& out) {
  if (out.size() > 4 && out.substr(out.size() - 4) == ".csv")
    return out.substr(0, out.size() - 4) + ".json";
  return out + ".json";
}

void emit(const PsCurve& curve, const std::string& out) {
  const std::string side = sidecar_path(out);
  try {
    curve.write_csv(out);
    curve.write_sidecar(side);
  } catch (...) {
    std::remove(out.c_str());
    std::remove(side.c_str());
    throw;
  }
}

std::vector<double> sweep_values(double from, double to, double step) {
  if (!(step > 0.0) || to < from)
    throw std::invalid_argument("sweep requires from <= to and step > 0");
  std::vector<double> xs;
  for (double x = from; x <= to + 1e-9 * step; x += step)
    xs.push_back(std::min(x, to));
  return xs;
}

// ---------------------------------------------------------------------------

void run_analytic_curve(const CommonOpts& o) {
  PsCurve curve;
  curve.sweep_name = "mu [ratio]";
  curve.provenance = Provenance::Analytic;
  curve.config = o.cfg;
  for (double mu : sweep_values(o.from(1.0), o.to(3.0), o.step(0.1))) {
    NetworkConfig c = o.cfg;
    c.mu = mu;
    curve.points.push_back({mu, ps_analytic(c), std::nullopt});
  }
  emit(curve, o.out);
}

Strategy make_strategy(const std::string& name, double mu, int n_requests,
                       double cluster_size) {
  if (name == "user-centric") return UserCentric{mu};
  if (name == "non-coordination") return NonCoordination{};
  if (name == "fixed-number") return FixedNumber{n_requests};
  if (name == "random-clustering") return RandomClustering{cluster_size};
  throw std::invalid_argument("unknown strategy: " + name);
}

void run_simulate_curve(const CommonOpts& o, const std::string& strategy,
                        int n_requests, double cluster_size) {
  PsCurve curve;
  curve.provenance = Provenance::Simulated;
  curve.config = o.cfg;
  if (strategy == "user-centric") {
    curve.sweep_name = "mu [ratio]";
    for (double mu : sweep_values(o.from(1.0), o.to(3.0), o.step(0.1))) {
      NetworkConfig c = o.cfg;
      c.mu = mu;
      auto est = estimate_ps(c, UserCentric{mu});
      curve.points.push_back({mu, est.p_hat, est.std_err});
    }
  } else if (strategy == "fixed-number") {
    curve.sweep_name = "n_requests [count]";
    for (double x : sweep_values(o.from(0.0), o.to(6.0), o.step(1.0))) {
      auto est = estimate_ps(o.cfg, FixedNumber{int(std::lround(x))});
      curve.points.push_back({x, est.p_hat, est.std_err});
    }
  } else if (strategy == "random-clustering") {
    curve.sweep_name = "cluster_size [count]";
    for (double x : sweep_values(o.from(1.0), o.to(8.0), o.step(1.0))) {
      auto est = estimate_ps(o.cfg, RandomClustering{x});
      curve.points.push_back({x, est.p_hat, est.std_err});
    }
  } else if (strategy == "non-coordination") {
    curve.sweep_name = "mu [ratio]";
    auto est = estimate_ps(o.cfg, NonCoordination{});
    curve.points.push_back({1.0, est.p_hat, est.std_err});
  } else {
    throw std::invalid_argument("unknown strategy: " + strategy);
  }
  emit(curve, o.out);
}

void run_optimize_mu(const CommonOpts& o, double mu_max) {
  auto result = optimal_mu(o.cfg, mu_max, [&](double mu) {
    NetworkConfig c = o.cfg;
    c.mu = mu;
    return ps_analytic(c);
  });
  PsCurve curve;
  curve.sweep_name = "mu [ratio]";
  curve.provenance = Provenance::Analytic;
  curve.config = o.cfg;
  std::map<double, double> dedup(result.trace.begin(), result.trace.end());
  for (auto& [mu, ps] : dedup) curve.points.push_back({mu, ps, std::nullopt});
  emit(curve, o.out);
  std::printf("mu_star=%.10g ps=%.10g\n", result.argmax, result.value);
}

void run_compare_strategies(const CommonOpts& o, bool mu_given,
                            int n_requests, double cluster_size) {
  PsCurve curve;
  curve.sweep_name = "rho [ratio]";
  curve.provenance = Provenance::Simulated;
  curve.config = o.cfg;
  curve.extra_columns = {
      "se_user_centric [probability]",  "ps_fixed_number [probability]",
      "se_fixed_number [probability]",  "ps_random_clustering [probability]",
      "se_random_clustering [probability]", "ps_non_coordination [probability]",
      "se_non_coordination [probability]", "mu_used [ratio]"};
  for (double rho : sweep_values(o.from(0.1), o.to(1.0), o.step(0.1))) {
    NetworkConfig c = o.cfg;
    c.lambda_u = c.lambda_b / rho;
    double mu = o.cfg.mu;
    if (!mu_given) {
      mu = optimal_mu(c, 3.0, [&](double m) {
             NetworkConfig p = c;
             p.mu = m;
             return ps_analytic(p);
           }).argmax;
    }
    c.mu = mu;
    auto uc = estimate_ps(c, UserCentric{mu});
    auto fn = estimate_ps(c, FixedNumber{n_requests});
    auto rc = estimate_ps(c, RandomClustering{cluster_size});
    auto nc = estimate_ps(c, NonCoordination{});
    curve.points.push_back({rho, uc.p_hat, uc.std_err});
    curve.extra_values.push_back({uc.std_err, fn.p_hat, fn.std_err, rc.p_hat,
                                  rc.std_err, nc.p_hat, nc.std_err, mu});
  }
  emit(curve, o.out);
}

void run_feedback_sweep(const CommonOpts& o) {
  PsCurve curve;
  curve.sweep_name = "feedback_bits [bits]";
  curve.provenance = Provenance::Simulated;
  curve.config = o.cfg;
  curve.extra_columns = {"ps_analytic [probability]"};
  for (double x : sweep_values(o.from(2.0), o.to(20.0), o.step(2.0))) {
    NetworkConfig c = o.cfg;
    c.feedback_bits = int(std::lround(x));
    auto est = estimate_ps(c, UserCentric{c.mu});
    curve.points.push_back({x, est.p_hat, est.std_err});
    curve.extra_values.push_back({ps_mixture_lf(c).ps});
  }
  emit(curve, o.out);
}

void run_density_tradeoff(const CommonOpts& o, double target_ps) {
  PsCurve curve;
  curve.sweep_name = "m_antennas [count]";
  curve.provenance = Provenance::Analytic;
  curve.config = o.cfg;
  curve.extra_columns = {"rho_min_proposed [ratio]",
                         "rho_min_non_coordination [ratio]"};
  for (double x : sweep_values(o.from(2.0), o.to(8.0), o.step(1.0))) {
    NetworkConfig c = o.cfg;
    c.m_antennas = int(std::lround(x));
    auto prop = min_density_ratio(c, target_ps, RatioStrategy::Proposed);
    auto nc = min_density_ratio(c, target_ps, RatioStrategy::NonCoordination);
    if (!prop.feasible || !nc.feasible)
      throw std::runtime_error("density-tradeoff: target unreachable at M=" +
                               std::to_string(c.m_antennas));
    curve.points.push_back({x, prop.value, std::nullopt});
    curve.extra_values.push_back({prop.argmax, nc.argmax});
  }
  emit(curve, o.out);
}

void run_pmf_check(const CommonOpts& o, int max_k) {
  NetworkConfig cfg = o.cfg;
  Window w{cfg.effective_window_side(), true};
  std::vector<long> counts(max_k + 1, 0);
  long active_total = 0;
  for (int rep = 0; rep < cfg.n_realizations; ++rep) {
    auto rng = make_stream(cfg.seed, std::uint64_t(rep));
    auto bs = sample_ppp(cfg.lambda_b, w, rng);
    if (bs.empty()) continue;
    std::vector<Vec2> users{{0.0, 0.0}};
    for (auto& p : sample_ppp(cfg.lambda_u, w, rng)) users.push_back(p);
    auto real = associate_and_schedule(std::move(bs), std::move(users), w, rng);
    build_request_graph(real, cfg.mu, w);
    for (int b = 0; b < int(real.bs_points.size()); ++b) {
      if (!real.active(b)) continue;
      ++active_total;
      int k = std::min<int>(int(real.requests[b].size()), max_k);
      ++counts[k];
    }
  }
  if (active_total == 0) throw std::runtime_error("pmf-check: no active BS");

  const double k_bar = mean_requests(activity_probability(cfg.rho()), cfg.mu);
  PsCurve curve;
  curve.sweep_name = "k [count]";
  curve.provenance = Provenance::Simulated;
  curve.config = cfg;
  curve.extra_columns = {"pmf_model [probability]"};
  double tv = 0.0;
  for (int k = 0; k <= max_k; ++k) {
    double emp = double(counts[k]) / double(active_total);
    double model = requests_received_pmf(k_bar, k);
    if (k == max_k)  // last bin absorbs the tail on both sides
      model = gamma_p(double(max_k), k_bar);  // P(K >= max_k)
    curve.points.push_back({double(k), emp, std::nullopt});
    curve.extra_values.push_back({model});
    tv += 0.5 * std::abs(emp - model);
  }
  emit(curve, o.out);
  std::printf("tv_distance=%.6g mean_model=%.6g\n", tv, k_bar);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"user-centric interference nulling toolkit"};
  app.require_subcommand(1);

  auto* c_an = app.add_subcommand("analytic-curve",
                                  "closed-form success probability vs mu");
  auto o_an = add_common(c_an);

  auto* c_sim = app.add_subcommand("simulate-curve",
                                   "simulated success probability sweep");
  auto o_sim = add_common(c_sim);
  auto strategy = std::make_shared<std::string>("user-centric");
  auto n_requests = std::make_shared<int>(1);
  auto cluster_size = std::make_shared<double>(4.0);
  c_sim->add_option("--strategy", *strategy,
                    "user-centric | non-coordination | fixed-number | "
                    "random-clustering");
  c_sim->add_option("--n-requests", *n_requests, "fixed-number parameter");
  c_sim->add_option("--cluster-size", *cluster_size,
                    "random-clustering mean cluster size");

  auto* c_opt = app.add_subcommand("optimize-mu",
                                   "closed-form optimal nulling range");
  auto o_opt = add_common(c_opt);
  auto mu_max = std::make_shared<double>(4.0);
  c_opt->add_option("--mu-max", *mu_max, "upper end of the search range");

  auto* c_cmp = app.add_subcommand("compare-strategies",
                                   "four coordination strategies vs rho");
  auto o_cmp = add_common(c_cmp);
  auto cmp_n = std::make_shared<int>(1);
  auto cmp_s = std::make_shared<double>(4.0);
  c_cmp->add_option("--n-requests", *cmp_n, "fixed-number parameter");
  c_cmp->add_option("--cluster-size", *cmp_s,
                    "random-clustering mean cluster size");

  auto* c_fb = app.add_subcommand("feedback-sweep",
                                  "success probability vs feedback bits");
  auto o_fb = add_common(c_fb);

  auto* c_dt = app.add_subcommand("density-tradeoff",
                                  "minimal density ratio vs antenna count");
  auto o_dt = add_common(c_dt);
  auto target_ps = std::make_shared<double>(0.9);
  c_dt->add_option("--target-ps", *target_ps, "coverage target");

  auto* c_pmf = app.add_subcommand(
      "pmf-check", "empirical vs Poisson pmf of received requests");
  auto o_pmf = add_common(c_pmf);
  auto max_k = std::make_shared<int>(10);
  c_pmf->add_option("--max-k", *max_k, "last pmf bin (absorbs the tail)");

  try {
    app.parse(argc, argv);
    if (*c_an) {
      o_an->finalize();
      run_analytic_curve(*o_an);
    } else if (*c_sim) {
      o_sim->finalize();
      run_simulate_curve(*o_sim, *strategy, *n_requests, *cluster_size);
    } else if (*c_opt) {
      o_opt->finalize();
      run_optimize_mu(*o_opt, *mu_max);
    } else if (*c_cmp) {
      o_cmp->finalize();
      run_compare_strategies(*o_cmp, c_cmp->count("--mu") > 0, *cmp_n, *cmp_s);
    } else if (*c_fb) {
      o_fb->finalize();
      run_feedback_sweep(*o_fb);
    } else if (*c_dt) {
      o_dt->finalize();
      run_density_tradeoff(*o_dt, *target_ps);
    } else if (*c_pmf) {
      o_pmf->finalize();
      run_pmf_check(*o_pmf, *max_k);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
