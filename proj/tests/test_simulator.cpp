#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <limits>
#include <vector>

#include "ucin/analytics.hpp"
#include "ucin/rng.hpp"
#include "ucin/simulator.hpp"

#include "stat_utils.hpp"

using namespace ucin;

TEST_CASE("channel entries are CN(0,1)") {
  auto rng = make_stream(21, 0);
  const int m = 8, reps = 3000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < reps; ++i) {
    auto h = draw_channel(m, rng);
    for (int j = 0; j < m; ++j) {
      sum += h[j].real() + h[j].imag();
      sum2 += std::norm(h[j]);
    }
  }
  const double n = double(reps) * m;
  // standard error of the pooled mean is 1/(2 sqrt(n)) ~ 0.003
  CHECK(sum / (2.0 * n) == doctest::Approx(0.0).epsilon(0.012).scale(1.0));
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("zero-forcing precoder") {
  auto rng = make_stream(22, 0);

  // no nulled directions: matched filter
  auto h = draw_channel(4, rng);
  CVec w = zf_precoder(h, {});
  CHECK((w - h.normalized()).norm() < 1e-12);

  // nulling e1 zeroes the first coordinate
  CVec e1 = CVec::Zero(4);
  e1[0] = 1.0;
  w = zf_precoder(h, {e1});
  CHECK(std::abs(w[0]) < 1e-12);
  CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-12));

  // orthogonality against several random directions
  const int m = 8;
  h = draw_channel(m, rng);
  std::vector<CVec> nulled;
  for (int i = 0; i < 5; ++i) nulled.push_back(draw_channel(m, rng));
  w = zf_precoder(h, nulled);
  CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-12));
  for (auto& b : nulled) CHECK(std::abs(b.dot(w)) < 1e-10 * b.norm());

  // h inside the nulled span is degenerate
  CHECK_THROWS_AS(zf_precoder(e1, {e1}), DegenerateChannelError);
  // cannot null M or more directions
  std::vector<CVec> too_many(4, e1);
  CHECK_THROWS_AS(zf_precoder(h.head(4).eval(), too_many),
                  std::invalid_argument);
}

TEST_CASE("beamforming gains follow Gamma(M-k,1) and Exp(1)") {
  auto rng = make_stream(23, 1);
  const int m = 8, k = 3, reps = 3000;
  std::vector<double> g0, gx;
  for (int i = 0; i < reps; ++i) {
    auto h = draw_channel(m, rng);
    std::vector<CVec> nulled;
    for (int j = 0; j < k; ++j) nulled.push_back(draw_channel(m, rng));
    CVec w = zf_precoder(h, nulled);
    g0.push_back(std::norm(h.dot(w)));
    gx.push_back(std::norm(draw_channel(m, rng).dot(w)));
  }
  CHECK(testutil::ks_pass(g0, [&](double x) { return gamma_p(m - k, x); }));
  CHECK(testutil::ks_pass(gx, [](double x) { return -std::expm1(-x); }));
}

TEST_CASE("quantized directions follow the distortion law") {
  auto rng = make_stream(24, 0);

  // many bits: essentially perfect direction (distortion ~ 2^(-B/(M-1)))
  auto h = draw_channel(6, rng).normalized().eval();
  CVec q = rvq_quantize(h, 200, rng);
  CHECK(std::abs(h.dot(q)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(q.norm() == doctest::Approx(1.0).epsilon(1e-12));

  // M = 2, B = 1: E[sin^2] = kappa_I = 1/3 and the full law matches
  const int reps = 20000;
  std::vector<double> sin2;
  double mean = 0.0;
  for (int i = 0; i < reps; ++i) {
    auto d = draw_channel(2, rng).normalized().eval();
    double s = 1.0 - std::norm(d.dot(rvq_quantize(d, 1, rng)));
    sin2.push_back(s);
    mean += s;
  }
  mean /= reps;
  CHECK(quantization_distortion(2, 1).second == doctest::Approx(1.0 / 3.0));
  CHECK(mean == doctest::Approx(1.0 / 3.0).epsilon(0.02));
  CHECK(testutil::ks_pass(
      sin2, [](double x) { return 1.0 - (1.0 - x) * (1.0 - x); }));

  CHECK_THROWS_AS(rvq_quantize(draw_channel(1, rng), 4, rng),
                  std::invalid_argument);
}

TEST_CASE("explicit codebook search matches the closed-form law") {
  // for M = 2 the cell approximation is exact, so both samplers share one law
  auto rng = make_stream(25, 0);
  const int reps = 6000, bits = 2;
  std::vector<double> via_law, via_codebook;
  double mean_cb = 0.0;
  for (int i = 0; i < reps; ++i) {
    auto d = draw_channel(2, rng).normalized().eval();
    via_law.push_back(1.0 - std::norm(d.dot(rvq_quantize(d, bits, rng))));
    double s = 1.0 - std::norm(d.dot(rvq_quantize_codebook(d, bits, rng)));
    via_codebook.push_back(s);
    mean_cb += s;
  }
  CHECK(quantization_distortion(2, bits).second == doctest::Approx(0.2));
  CHECK(mean_cb / reps == doctest::Approx(0.2).epsilon(0.03));
  CHECK(testutil::ks2_pass(via_law, via_codebook));
  CHECK_THROWS_AS(rvq_quantize_codebook(draw_channel(2, rng), 30, rng),
                  std::invalid_argument);
}

TEST_CASE("typical-user SIR on hand-built networks") {
  Window w{100.0, true};
  auto rng = make_stream(26, 0);

  NetworkRealization r;
  r.bs_points = {{1.0, 0.0}};
  r.user_points = {{0.0, 0.0}};
  r.home_bs = {0};
  r.scheduled_user = {0};
  r.requests = {{}};
  r.nulling_targets = {{}};
  // no interferer at all
  CHECK(sinr_typical(r, w, 4, 4.0, {}, rng) ==
        std::numeric_limits<double>::infinity());

  // one interferer, no nulling: finite positive SIR
  r.bs_points.push_back({3.0, 0.0});
  r.user_points.push_back({3.0, 0.0});
  r.home_bs.push_back(1);
  r.scheduled_user = {0, 1};
  r.requests = {{}, {}};
  r.nulling_targets = {{}, {}};
  double sir = sinr_typical(r, w, 4, 4.0, {}, rng);
  CHECK(sir > 0.0);
  CHECK(std::isfinite(sir));

  // the interferer nulls the typical user perfectly -> no interference
  r.nulling_targets = {{}, {0}};
  CHECK(sinr_typical(r, w, 4, 4.0, {}, rng) ==
        std::numeric_limits<double>::infinity());
  // under coarse quantization some interference leaks back
  double lf = sinr_typical(r, w, 4, 4.0, 2, rng);
  CHECK(std::isfinite(lf));
  CHECK(lf > 0.0);
}

namespace {

NetworkConfig small_mc_config() {
  NetworkConfig cfg;
  cfg.lambda_b = 1e-2;
  cfg.lambda_u = 1e-1;
  cfg.m_antennas = 4;
  cfg.alpha = 4.0;
  cfg.sinr_threshold = 1.0;
  cfg.mu = 2.0;
  cfg.window_side = 100.0;  // 100 expected BSs: fast
  cfg.n_realizations = 400;
  cfg.seed = 99;
  return cfg;
}

}  // namespace

TEST_CASE("coverage estimates are reproducible and thread-invariant") {
  auto cfg = small_mc_config();
  Strategy s = UserCentric{cfg.mu};
  auto a = estimate_ps(cfg, s, 1);
  auto b = estimate_ps(cfg, s, 1);
  auto c = estimate_ps(cfg, s, 3);
  CHECK(a.p_hat == b.p_hat);
  CHECK(a.p_hat == c.p_hat);
  CHECK(a.n == cfg.n_realizations);
  CHECK(a.p_hat > 0.0);
  CHECK(a.p_hat < 1.0);
  CHECK(a.std_err ==
        doctest::Approx(std::sqrt(a.p_hat * (1.0 - a.p_hat) / a.n)));

  cfg.seed = 100;
  CHECK(estimate_ps(cfg, s, 1).p_hat != a.p_hat);
}

TEST_CASE("degenerate strategy parameters reduce to no coordination") {
  auto cfg = small_mc_config();
  double base = estimate_ps(cfg, NonCoordination{}, 1).p_hat;
  CHECK(estimate_ps(cfg, UserCentric{1.0}, 1).p_hat == base);
  CHECK(estimate_ps(cfg, FixedNumber{0}, 1).p_hat == base);
  CHECK(estimate_ps(cfg, RandomClustering{1.0}, 1).p_hat == base);
}

TEST_CASE("a vanishing threshold is always covered") {
  auto cfg = small_mc_config();
  cfg.sinr_threshold = 1e-12;
  cfg.n_realizations = 100;
  CHECK(estimate_ps(cfg, NonCoordination{}, 1).p_hat == 1.0);
}
