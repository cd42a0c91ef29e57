#include "ucin/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ucin/rng.hpp"

namespace ucin {

namespace {

// Orthonormal basis of span(vectors) by modified Gram-Schmidt with
// re-orthogonalization; near-dependent directions are dropped.
std::vector<CVec> orthonormal_basis(const std::vector<CVec>& vectors) {
  std::vector<CVec> basis;
  for (const auto& f : vectors) {
    CVec v = f;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b * b.dot(v);
    if (v.norm() > 1e-10 * f.norm()) basis.push_back(v.normalized());
  }
  return basis;
}

CVec project_out(const CVec& h, const std::vector<CVec>& basis) {
  CVec w = h;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) w -= b * b.dot(w);
  return w;
}

}  // namespace

CVec draw_channel(int m_antennas, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CVec h(m_antennas);
  for (int i = 0; i < m_antennas; ++i)
    h[i] = std::complex<double>(normal(rng), normal(rng));
  return h;
}

CVec zf_precoder(const CVec& h, const std::vector<CVec>& nulled) {
  if (int(nulled.size()) > h.size() - 1)
    throw std::invalid_argument("zf_precoder: more than M-1 nulled directions");
  auto basis = orthonormal_basis(nulled);
  CVec w = project_out(h, basis);
  double n = w.norm();
  if (n < 1e-9 * h.norm() || h.norm() == 0.0)
    throw DegenerateChannelError("zf_precoder: projection numerically zero");
  return w / n;
}

CVec rvq_quantize(const CVec& h_dir, int feedback_bits, std::mt19937_64& rng) {
  const int m = int(h_dir.size());
  if (m < 2) throw std::invalid_argument("rvq_quantize: M >= 2 required");
  if (feedback_bits < 0)
    throw std::invalid_argument("rvq_quantize: B >= 0 required");
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double u;
  do {
    u = uniform(rng);
  } while (u == 0.0);
  // P(sin^2 > x) = (1 - x^(M-1))^(2^B)  =>  inverse-CDF sample
  double sin2 = std::pow(-std::expm1(std::ldexp(std::log(u), -feedback_bits)),
                         1.0 / (m - 1));
  sin2 = std::clamp(sin2, 0.0, 1.0);
  // isotropic direction in the orthogonal complement of h_dir
  CVec e;
  double n = 0.0;
  do {
    e = draw_channel(m, rng);
    e -= h_dir * h_dir.dot(e);
    n = e.norm();
  } while (n < 1e-12);
  e /= n;
  return std::sqrt(1.0 - sin2) * h_dir + std::sqrt(sin2) * e;
}

CVec rvq_quantize_codebook(const CVec& h_dir, int feedback_bits,
                           std::mt19937_64& rng) {
  const int m = int(h_dir.size());
  if (m < 2)
    throw std::invalid_argument("rvq_quantize_codebook: M >= 2 required");
  if (feedback_bits < 0 || feedback_bits > 24)
    throw std::invalid_argument(
        "rvq_quantize_codebook: explicit codebooks limited to B <= 24");
  const long size = 1L << feedback_bits;
  CVec best;
  double best_ip = -1.0;
  for (long j = 0; j < size; ++j) {
    CVec c = draw_channel(m, rng).normalized();
    double ip = std::abs(h_dir.dot(c));
    if (ip > best_ip) {
      best_ip = ip;
      best = c;
    }
  }
  return best;
}

namespace {

// Beamforming gain toward the measured user from one BS, sampled by explicit
// channel drawing, quantization and zero-forcing. Only needed when no exact
// closed-form law exists (limited feedback at an involved BS).
double explicit_gain(const NetworkRealization& realization, int b,
                     int m_antennas, std::optional<int> feedback_bits,
                     std::mt19937_64& rng) {
  const bool lf = feedback_bits.has_value();
  const int served = realization.scheduled_user[b];

  CVec h_typical = draw_channel(m_antennas, rng);
  std::vector<CVec> nulled;
  nulled.reserve(realization.nulling_targets[b].size());
  for (int t : realization.nulling_targets[b]) {
    CVec dir = (t == 0) ? h_typical.normalized()
                        : draw_channel(m_antennas, rng).normalized();
    if (lf) dir = rvq_quantize(dir, *feedback_bits, rng);
    nulled.push_back(std::move(dir));
  }

  CVec w;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 0 && served == 0)
      h_typical = draw_channel(m_antennas, rng);
    CVec serve_dir = (served == 0)
                         ? h_typical.normalized()
                         : draw_channel(m_antennas, rng).normalized();
    if (lf) serve_dir = rvq_quantize(serve_dir, *feedback_bits, rng);
    try {
      w = zf_precoder(serve_dir, nulled);
      break;
    } catch (const DegenerateChannelError&) {
      if (attempt >= 100) throw;
      // measure-zero event: resample the served channel
    }
  }
  return std::norm(h_typical.dot(w));
}

}  // namespace

double sinr_typical(const NetworkRealization& realization, const Window& window,
                    int m_antennas, double alpha,
                    std::optional<int> feedback_bits, std::mt19937_64& rng) {
  if (m_antennas > 32)
    throw std::invalid_argument("sinr_typical: M <= 32 supported");
  const int b0 = realization.home_bs.at(0);
  const Vec2 u0 = realization.user_points.at(0);
  const bool lf = feedback_bits.has_value();
  double signal = 0.0;
  double interference = 0.0;
  bool has_interferer = false;
  std::exponential_distribution<double> exp1(1.0);

  for (int b = 0; b < int(realization.bs_points.size()); ++b) {
    if (!realization.active(b)) continue;
    const auto& targets = realization.nulling_targets[b];
    const bool nulls_me =
        std::find(targets.begin(), targets.end(), 0) != targets.end();

    // Gains whose law is known in closed form are sampled directly; this is
    // distributionally identical to drawing channels and zero-forcing (the
    // projection of a Gaussian channel onto an independent subspace), but
    // avoids the vector algebra for the vast majority of BSs.
    double gain;
    if (b == b0) {
      if (lf) {
        gain = explicit_gain(realization, b, m_antennas, feedback_bits, rng);
      } else {
        std::gamma_distribution<double> g(
            double(m_antennas - int(targets.size())), 1.0);
        gain = g(rng);
      }
    } else if (nulls_me) {
      if (!lf) continue;  // perfectly nulled: exactly zero interference
      gain = explicit_gain(realization, b, m_antennas, feedback_bits, rng);
    } else {
      // independent unit-norm precoder: |h . w|^2 ~ Exp(1) exactly,
      // quantized or not
      gain = exp1(rng);
    }

    const double d = window.dist(u0, realization.bs_points[b]);
    if (b == b0) {
      signal = gain * std::pow(d, -alpha);
    } else {
      interference += gain * std::pow(d, -alpha);
      has_interferer = true;
    }
  }
  if (!has_interferer || interference == 0.0)
    return std::numeric_limits<double>::infinity();
  return signal / interference;
}

void fixed_number_requests(NetworkRealization& realization, int n_requests,
                           int m_antennas, const Window& window,
                           std::mt19937_64& rng) {
  if (n_requests < 0)
    throw std::domain_error("fixed_number_requests: N >= 0");
  for (auto& v : realization.requests) v.clear();
  if (n_requests > 0) {
    PointGrid grid(realization.bs_points, window);
    int n_active = 0;
    for (int b = 0; b < int(realization.bs_points.size()); ++b)
      if (realization.active(b)) ++n_active;
    const double density =
        std::max(n_active - 1, 1) / (window.side * window.side);
    std::vector<std::pair<double, int>> candidates;
    for (int b = 0; b < int(realization.bs_points.size()); ++b) {
      int u = realization.scheduled_user[b];
      if (u < 0) continue;
      double radius =
          1.5 * std::sqrt((n_requests + 2) / (M_PI * density));
      while (true) {
        candidates.clear();
        grid.for_each_within(realization.user_points[u], radius,
                             [&](int target, double d2) {
                               if (target == b) return;
                               if (!realization.active(target)) return;
                               candidates.emplace_back(d2, target);
                             });
        if (int(candidates.size()) >= n_requests || radius >= window.side)
          break;
        radius *= 1.5;
      }
      int take = std::min<int>(n_requests, int(candidates.size()));
      std::partial_sort(candidates.begin(), candidates.begin() + take,
                        candidates.end());
      for (int i = 0; i < take; ++i)
        realization.requests[candidates[i].second].push_back(u);
    }
  }
  resolve_requests(realization, m_antennas, rng);
}

void random_clustering(NetworkRealization& realization,
                       double mean_cluster_size, int m_antennas,
                       double lambda_b, const Window& window,
                       std::mt19937_64& rng) {
  if (!(mean_cluster_size >= 1.0))
    throw std::domain_error("random_clustering: cluster size >= 1");
  for (auto& v : realization.requests) v.clear();
  if (mean_cluster_size == 1.0) {
    // singleton clusters: no coordination
    resolve_requests(realization, m_antennas, rng);
    return;
  }
  const double target_cell = std::sqrt(mean_cluster_size / lambda_b);
  const int n_cells =
      std::max(1, int(std::lround(window.side / target_cell)));
  const double cell = window.side / n_cells;
  std::uniform_real_distribution<double> shift_dist(0.0, cell);
  const double sx = shift_dist(rng);
  const double sy = shift_dist(rng);
  const double half = window.side / 2.0;
  auto mod = [n_cells](int c) {
    int r = c % n_cells;
    return r < 0 ? r + n_cells : r;
  };
  std::vector<std::vector<int>> clusters(size_t(n_cells) * n_cells);
  for (int b = 0; b < int(realization.bs_points.size()); ++b) {
    int cx = mod(int(std::floor((realization.bs_points[b].x + half + sx) / cell)));
    int cy = mod(int(std::floor((realization.bs_points[b].y + half + sy) / cell)));
    clusters[size_t(cy) * n_cells + cx].push_back(b);
  }
  for (const auto& members : clusters) {
    for (int b : members) {
      if (!realization.active(b)) continue;
      for (int other : members) {
        if (other == b || !realization.active(other)) continue;
        realization.requests[b].push_back(realization.scheduled_user[other]);
      }
    }
  }
  resolve_requests(realization, m_antennas, rng);
}

namespace {

bool simulate_one(const NetworkConfig& cfg, const Strategy& strategy,
                  const Window& window, std::mt19937_64& rng) {
  std::vector<Vec2> bs;
  do {
    bs = sample_ppp(cfg.lambda_b, window, rng);
  } while (bs.empty());
  std::vector<Vec2> users;
  users.push_back({0.0, 0.0});  // typical user at the window center
  for (const auto& p : sample_ppp(cfg.lambda_u, window, rng))
    users.push_back(p);

  auto real = associate_and_schedule(std::move(bs), std::move(users), window, rng);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UserCentric>) {
          build_request_graph(real, s.mu, window);
          resolve_requests(real, cfg.m_antennas, rng);
        } else if constexpr (std::is_same_v<T, FixedNumber>) {
          fixed_number_requests(real, s.n_requests, cfg.m_antennas, window,
                                rng);
        } else if constexpr (std::is_same_v<T, RandomClustering>) {
          random_clustering(real, s.mean_cluster_size, cfg.m_antennas,
                            cfg.lambda_b, window, rng);
        }
        // NonCoordination: no requests
      },
      strategy);
  double sir = sinr_typical(real, window, cfg.m_antennas, cfg.alpha,
                            cfg.feedback_bits, rng);
  return sir >= cfg.sinr_threshold;
}

}  // namespace

CoverageEstimate estimate_ps(const NetworkConfig& config,
                             const Strategy& strategy, int n_threads) {
  config.validate();
  Window window{config.effective_window_side(), true};
  const int n = config.n_realizations;
  if (n_threads <= 0)
    n_threads = std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, n);

  std::vector<long> successes(n_threads, 0);
  std::vector<std::exception_ptr> errors(n_threads);
  auto worker = [&](int w) {
    try {
      long count = 0;
      for (int i = w; i < n; i += n_threads) {
        auto rng = make_stream(config.seed, std::uint64_t(i));
        if (simulate_one(config, strategy, window, rng)) ++count;
      }
      successes[w] = count;
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  long total = 0;
  for (long s : successes) total += s;
  CoverageEstimate est;
  est.n = n;
  est.p_hat = double(total) / n;
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / n);
  est.config = config;
  return est;
}

}  // namespace ucin
