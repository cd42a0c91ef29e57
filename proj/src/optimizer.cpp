#include "ucin/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ucin/analytics.hpp"

namespace ucin {

OptimizationResult optimal_mu(const NetworkConfig& config, double mu_max,
                              const Evaluator& evaluator) {
  (void)config;
  if (!(mu_max > 1.0)) throw std::domain_error("optimal_mu: mu_max > 1");
  OptimizationResult result;

  // coarse grid, step 0.1, ties toward smaller mu
  double best_mu = 1.0;
  double best_val = -1.0;
  for (double mu = 1.0; mu <= mu_max + 1e-9; mu += 0.1) {
    double m = std::min(mu, mu_max);
    double v = evaluator(m);
    result.trace.emplace_back(m, v);
    if (v > best_val + 1e-15) {
      best_val = v;
      best_mu = m;
    }
  }

  // golden-section refinement on the bracketing interval
  double a = std::max(1.0, best_mu - 0.1);
  double b = std::min(mu_max, best_mu + 0.1);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = evaluator(c);
  double fd = evaluator(d);
  result.trace.emplace_back(c, fc);
  result.trace.emplace_back(d, fd);
  while (b - a > 0.01) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = evaluator(c);
      result.trace.emplace_back(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = evaluator(d);
      result.trace.emplace_back(d, fd);
    }
  }
  double refined_mu = 0.5 * (a + b);
  result.trace.emplace_back(refined_mu, evaluator(refined_mu));

  // return the best point ever evaluated; ties break toward smaller mu
  std::sort(result.trace.begin(), result.trace.end());
  result.argmax = result.trace.front().first;
  result.value = result.trace.front().second;
  for (auto& [mu, v] : result.trace) {
    if (v > result.value + 1e-15) {
      result.argmax = mu;
      result.value = v;
    }
  }
  return result;
}

OptimizationResult min_density_ratio(const Evaluator& ps_of_rho,
                                     double target_ps, double rho_lo,
                                     double rho_hi) {
  if (!(rho_lo > 0.0 && rho_hi > rho_lo))
    throw std::domain_error("min_density_ratio: need 0 < rho_lo < rho_hi");
  OptimizationResult result;
  double v_lo = ps_of_rho(rho_lo);
  result.trace.emplace_back(rho_lo, v_lo);
  if (v_lo >= target_ps) {
    result.argmax = rho_lo;
    result.value = v_lo;
    return result;
  }
  double v_hi = ps_of_rho(rho_hi);
  result.trace.emplace_back(rho_hi, v_hi);
  if (v_hi < target_ps) {
    result.feasible = false;
    result.argmax = rho_hi;
    result.value = v_hi;
    std::sort(result.trace.begin(), result.trace.end());
    return result;
  }
  // bisection in log space to 1% relative precision
  while (rho_hi / rho_lo > 1.01) {
    double mid = std::sqrt(rho_lo * rho_hi);
    double v = ps_of_rho(mid);
    result.trace.emplace_back(mid, v);
    if (v >= target_ps) {
      rho_hi = mid;
      v_hi = v;
    } else {
      rho_lo = mid;
    }
  }
  result.argmax = rho_hi;
  result.value = v_hi;
  std::sort(result.trace.begin(), result.trace.end());
  return result;
}

OptimizationResult min_density_ratio(const NetworkConfig& config,
                                     double target_ps, RatioStrategy strategy,
                                     double rho_lo, double rho_hi) {
  auto evaluate = [&](double rho) {
    NetworkConfig c = config;
    c.lambda_b = rho * c.lambda_u;
    if (strategy == RatioStrategy::NonCoordination) {
      c.mu = 1.0;
      return ps_analytic(c);
    }
    auto mu_opt = optimal_mu(c, 4.0, [&c](double mu) {
      NetworkConfig probe = c;
      probe.mu = mu;
      return ps_analytic(probe);
    });
    return mu_opt.value;
  };
  return min_density_ratio(evaluate, target_ps, rho_lo, rho_hi);
}

}  // namespace ucin
