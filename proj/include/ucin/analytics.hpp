#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ucin/config.hpp"

namespace ucin {

/// CSI regime used when producing a set of q-coefficients.
struct PerfectCsi {};
struct LimitedFeedback {
  double kappa_0;  ///< mean retained signal fraction, in (0, 1]
  double kappa_i;  ///< mean quantization distortion, 1 - kappa_0
};

/// The vector (q_0 ... q_{l-1}) parameterizing the lower triangular Toeplitz
/// matrix of the conditional success probability.
struct QCoefficients {
  std::vector<double> values;
  bool limited_feedback = false;
  double kappa_0 = 1.0;
  double kappa_i = 0.0;
  // parameters the values were produced from
  double gamma_hat = 0.0;
  double delta = 0.0;
  double mu = 1.0;
  double epsilon = 0.0;
};

/// Decomposition of the success probability mixture over the request count at
/// the typical user's home BS.
struct MixtureResult {
  double ps = 0.0;  ///< aggregated success probability, in [0, 1]
  struct Term {
    int k;          ///< requests received by the home BS
    double pmf;     ///< Poisson weight p_K(k)
    double ps_k;    ///< conditional success probability p_s(k)
  };
  std::vector<Term> per_k_terms;  ///< k = 0 ... M-1
  double tail = 0.0;    ///< aggregated k >= M contribution
  double epsilon = 0.0;
  double k_bar = 0.0;
};

/// BS activity probability as a function of the BS-user density ratio.
double activity_probability(double rho);

/// Mean number of nulling requests received per active BS.
double mean_requests(double p_a, double mu);

/// Poisson pmf of the number of requests received by a BS.
double requests_received_pmf(double k_bar, int k);

/// Geometric pmf of the number of requests sent by a served user.
double requests_sent_pmf(double k_bar, int n);

/// Probability that a requested BS cannot grant a request (series form,
/// truncated when the remaining Poisson tail mass is below 1e-12).
double epsilon_overload(int m_antennas, double k_bar);

/// (kappa_0, kappa_I) for RVQ with B feedback bits and M antennas; M >= 2.
std::pair<double, double> quantization_distortion(int m_antennas,
                                                  int feedback_bits);

/// i-th Toeplitz coefficient, perfect CSI.
double q_coefficient(int i, double gamma_hat, double delta, double mu,
                     double epsilon);

/// i-th Toeplitz coefficient under limited feedback.
double q_coefficient_lf(int i, double gamma_hat, double delta, double mu,
                        double epsilon, double kappa_0, double kappa_i);

QCoefficients make_q_coefficients(int count, double gamma_hat, double delta,
                                  double mu, double epsilon);
QCoefficients make_q_coefficients_lf(int count, double gamma_hat, double delta,
                                     double mu, double epsilon, double kappa_0,
                                     double kappa_i);

/// Conditional success probability ||[I_l + p_a Q_l]^{-1}||_1 via forward
/// substitution on the Toeplitz structure.
double ps_given_k(int l, double p_a, std::span<const double> q);

/// Independent route: the recursion a_0(r) = exp(-pi lb pa r^2 q0),
/// a_n(r) = pi lb pa r^2 sum_{i<n} ((n-i)/n) q_{n-i} a_i(r), integrated
/// against the nearest-BS distance density 2 pi lb r exp(-pi lb r^2).
double ps_given_k_oracle(int l, double p_a, std::span<const double> q,
                         double lambda_b);

/// Success probability mixture, perfect CSI. Depends on (lambda_b, lambda_u)
/// only through their ratio.
MixtureResult ps_mixture(const NetworkConfig& config);

/// Success probability mixture with limited feedback (config.feedback_bits
/// must be present, M >= 2).
MixtureResult ps_mixture_lf(const NetworkConfig& config);

/// Dispatches to ps_mixture or ps_mixture_lf based on config.feedback_bits.
double ps_analytic(const NetworkConfig& config);

}  // namespace ucin
