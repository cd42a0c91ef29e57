#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ucin/analytics.hpp"
#include "ucin/config.hpp"
#include "ucin/optimizer.hpp"

using namespace ucin;

namespace {

NetworkConfig reference_config() {
  NetworkConfig cfg;
  cfg.lambda_b = 1e-3;
  cfg.lambda_u = 1e-2;
  cfg.m_antennas = 8;
  cfg.alpha = 4.0;
  cfg.sinr_threshold = 10.0;
  cfg.mu = 1.0;
  return cfg;
}

Evaluator analytic_of_mu(const NetworkConfig& base) {
  return [base](double mu) {
    NetworkConfig c = base;
    c.mu = mu;
    return ps_analytic(c);
  };
}

}  // namespace

TEST_CASE("constant objective ties break toward mu = 1") {
  auto r = optimal_mu(reference_config(), 3.0, [](double) { return 0.5; });
  CHECK(r.argmax == doctest::Approx(1.0).epsilon(0.02));
  CHECK(r.value == 0.5);
  CHECK(r.feasible);
}

TEST_CASE("known quadratic maximum is located to 0.01") {
  auto f = [](double mu) { return 1.0 - (mu - 1.73) * (mu - 1.73); };
  auto r = optimal_mu(reference_config(), 3.0, f);
  CHECK(r.argmax == doctest::Approx(1.73).epsilon(0.01));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-3));
  // trace is sorted by parameter
  for (size_t i = 1; i < r.trace.size(); ++i)
    CHECK(r.trace[i - 1].first <= r.trace[i].first);
}

TEST_CASE("reference scenario has an interior optimum near 1.9") {
  auto cfg = reference_config();
  auto r = optimal_mu(cfg, 3.0, analytic_of_mu(cfg));
  CHECK(r.argmax == doctest::Approx(1.9).epsilon(0.08));
  CHECK(r.value == doctest::Approx(0.7844).epsilon(0.002));
  // the optimum beats every traced point (up to refinement noise)
  for (auto& [mu, v] : r.trace) CHECK(r.value >= v - 1e-12);
  // and beats the coordination-free baseline decisively
  cfg.mu = 1.0;
  CHECK(r.value > ps_analytic(cfg) + 0.15);
}

TEST_CASE("an easy threshold pushes the optimum toward no coordination") {
  auto cfg = reference_config();
  cfg.sinr_threshold = 0.1;  // -10 dB: nulling buys almost nothing
  auto r = optimal_mu(cfg, 3.0, analytic_of_mu(cfg));
  CHECK(r.argmax < 1.35);
  CHECK(r.value > 0.9);
}

TEST_CASE("optimal_mu rejects a degenerate range") {
  CHECK_THROWS_AS(
      optimal_mu(reference_config(), 1.0, [](double) { return 0.0; }),
      std::domain_error);
}

TEST_CASE("min_density_ratio bisection on a monotone objective") {
  // ps(rho) = rho / (1 + rho): increasing, invertible
  Evaluator f = [](double rho) { return rho / (1.0 + rho); };
  auto r = min_density_ratio(f, 0.5, 1.0 / 64.0, 32.0);
  CHECK(r.feasible);
  CHECK(r.argmax == doctest::Approx(1.0).epsilon(0.011));
  CHECK(r.value >= 0.5);

  // a target of 0 is already met at the lower end
  auto r0 = min_density_ratio(f, 0.0, 1.0 / 64.0, 32.0);
  CHECK(r0.argmax == 1.0 / 64.0);

  // an unreachable target reports infeasibility at the upper end
  auto ri = min_density_ratio(f, 0.99, 1.0 / 64.0, 32.0);
  CHECK(!ri.feasible);
  CHECK(ri.argmax == 32.0);

  CHECK_THROWS_AS(min_density_ratio(f, 0.5, 2.0, 1.0), std::domain_error);
}

TEST_CASE("coordination reduces the density needed for a coverage target") {
  auto cfg = reference_config();
  const double target = 0.7;
  auto proposed = min_density_ratio(cfg, target, RatioStrategy::Proposed);
  auto baseline =
      min_density_ratio(cfg, target, RatioStrategy::NonCoordination);
  REQUIRE(proposed.feasible);
  REQUIRE(baseline.feasible);
  CHECK(proposed.argmax < baseline.argmax);
  CHECK(proposed.value >= target);
  CHECK(baseline.value >= target);
  // the required ratio is monotone in the target
  auto harder = min_density_ratio(cfg, 0.8, RatioStrategy::Proposed);
  REQUIRE(harder.feasible);
  CHECK(harder.argmax >= proposed.argmax * 0.99);
}
