#pragma once

namespace ucin {

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a),
/// a > 0, x >= 0. Series expansion for x < a + 1, continued fraction
/// otherwise; converged to ~1e-14 relative.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// log Beta(x, y), valid for huge x (computed via lgamma).
double log_beta(double x, double y);

}  // namespace ucin
