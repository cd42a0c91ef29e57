#pragma once

#include <functional>
#include <vector>

#include "ucin/config.hpp"

namespace ucin {

struct OptimizationResult {
  double argmax = 0.0;   ///< mu* or rho_min
  double value = 0.0;    ///< objective at the optimum
  bool feasible = true;  ///< false when a target could not be reached
  std::vector<std::pair<double, double>> trace;  ///< (parameter, ps), sorted
};

/// Evaluator mapping a scalar design parameter to a success probability.
using Evaluator = std::function<double(double)>;

/// argmax of the evaluator over mu in [1, mu_max]: coarse 0.1 grid, then
/// golden-section refinement of the bracketing interval to 0.01 absolute
/// precision. Falls back to the grid maximum if refinement does not improve.
/// Ties break toward smaller mu.
OptimizationResult optimal_mu(const NetworkConfig& config, double mu_max,
                              const Evaluator& evaluator);

enum class RatioStrategy { Proposed, NonCoordination };

/// Smallest density ratio rho whose analytic success probability reaches
/// target_ps, by bisection to 1% relative precision. For Proposed, mu is
/// re-optimized at every probed rho; for NonCoordination, mu = 1.
OptimizationResult min_density_ratio(const NetworkConfig& config,
                                     double target_ps, RatioStrategy strategy,
                                     double rho_lo = 1.0 / 64.0,
                                     double rho_hi = 32.0);

/// As above, but against an arbitrary evaluator of rho.
OptimizationResult min_density_ratio(const Evaluator& ps_of_rho,
                                     double target_ps, double rho_lo,
                                     double rho_hi);

}  // namespace ucin
