#pragma once

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace ucin {

/// Absolute tolerance used for all improper integrals in the analytic engine.
inline constexpr double kQuadTol = 1e-10;

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Integral of f over the finite interval [a, b]. Endpoint singularities are
/// handled by the tanh-sinh rule.
template <typename F>
double integrate_finite(F&& f, double a, double b, double tol = kQuadTol) {
  if (b <= a) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0, l1 = 0.0;
  double r = integrator.integrate(f, a, b, 1e-13, &error, &l1);
  if (!(std::isfinite(r)) || error * l1 > tol)
    throw QuadratureError("finite quadrature failed, achieved tolerance " +
                          std::to_string(error * l1));
  return r;
}

/// Integral of f over [lower, inf), lower > 0, via the substitution u = 1/t.
template <typename F>
double integrate_tail(F&& f, double lower, double tol = kQuadTol) {
  if (!(lower > 0.0))
    throw std::domain_error("integrate_tail: requires lower > 0");
  auto g = [&f](double t) { return f(1.0 / t) / (t * t); };
  return integrate_finite(g, 0.0, 1.0 / lower, tol);
}

/// Integral of f over [0, inf) for integrands with exponential decay.
template <typename F>
double integrate_halfline(F&& f, double tol = kQuadTol) {
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0, l1 = 0.0;
  double r = integrator.integrate(f, 1e-13, &error, &l1);
  if (!(std::isfinite(r)) || error * l1 > tol)
    throw QuadratureError("half-line quadrature failed, achieved tolerance " +
                          std::to_string(error * l1));
  return r;
}

}  // namespace ucin
