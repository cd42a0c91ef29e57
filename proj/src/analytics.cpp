#include "ucin/analytics.hpp"

#include <cmath>
#include <stdexcept>

#include "ucin/quadrature.hpp"
#include "ucin/special.hpp"

namespace ucin {

namespace {

constexpr double kCellFitConstant = 3.5;  // cell size distribution fit

// Integrands of the Toeplitz coefficients; s = alpha/2 = 1/delta.
double integrand_q0(double u, double s) { return 1.0 / (1.0 + std::pow(u, s)); }

double integrand_qi(double u, double s, int i) {
  return 1.0 /
         ((1.0 + std::pow(u, -s)) * std::pow(1.0 + std::pow(u, s), double(i)));
}

// Tail integral over [lower, inf) under the substitution u -> 1/t, written
// out analytically so huge 1/t never overflows:
//   i = 0: integrand t^(s-2) / (1 + t^s)
//   i >= 1: integrand t^(s i - 2) / (1 + t^s)^(i+1)
double q_tail(int i, double s, double lower) {
  auto g = [s, i](double t) {
    if (t <= 0.0) return 0.0;
    const double e = (i == 0 ? s : s * i) - 2.0;
    return std::pow(t, e) / std::pow(1.0 + std::pow(t, s), double(i + 1));
  };
  return integrate_finite(g, 0.0, 1.0 / lower);
}

// gamma_eff^delta * [ tail integral beyond mu^2 * gamma_eff^-delta
//                     + epsilon * annulus integral ]
double q_two_term(int i, double gamma_eff, double delta, double mu,
                  double epsilon) {
  const double s = 1.0 / delta;
  const double inner = std::pow(gamma_eff, -delta);
  const double outer = mu * mu * inner;
  auto f = [s, i](double u) {
    return i == 0 ? integrand_q0(u, s) : integrand_qi(u, s, i);
  };
  double value = q_tail(i, s, outer);
  if (epsilon > 0.0 && mu > 1.0) value += epsilon * integrate_finite(f, inner, outer);
  return std::pow(gamma_eff, delta) * value;
}

// epsilon * annulus integral for an arbitrary effective threshold; used for
// the residual-interference term under limited feedback.
double q_annulus_term(int i, double gamma_eff, double delta, double mu,
                      double weight) {
  if (weight <= 0.0 || mu <= 1.0 || gamma_eff <= 0.0) return 0.0;
  const double s = 1.0 / delta;
  const double inner = std::pow(gamma_eff, -delta);
  const double outer = mu * mu * inner;
  auto f = [s, i](double u) {
    return i == 0 ? integrand_q0(u, s) : integrand_qi(u, s, i);
  };
  return weight * std::pow(gamma_eff, delta) * integrate_finite(f, inner, outer);
}

void check_q_inputs(double gamma_hat, double delta, double mu, double epsilon) {
  if (!(gamma_hat > 0.0)) throw std::domain_error("q_coefficient: gamma_hat > 0");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::domain_error("q_coefficient: delta in (0,1)");
  if (!(mu >= 1.0)) throw std::domain_error("q_coefficient: mu >= 1");
  if (epsilon < 0.0 || epsilon > 1.0)
    throw std::domain_error("q_coefficient: epsilon in [0,1]");
}

}  // namespace

double activity_probability(double rho) {
  if (!(rho > 0.0)) throw std::domain_error("activity_probability: rho > 0");
  return 1.0 -
         std::pow(1.0 + 1.0 / (kCellFitConstant * rho), -kCellFitConstant);
}

double mean_requests(double p_a, double mu) {
  if (p_a < 0.0 || p_a > 1.0)
    throw std::domain_error("mean_requests: p_a in [0,1]");
  if (!(mu >= 1.0)) throw std::domain_error("mean_requests: mu >= 1");
  return p_a * (mu * mu - 1.0);
}

double requests_received_pmf(double k_bar, int k) {
  if (k_bar < 0.0) throw std::domain_error("requests_received_pmf: k_bar >= 0");
  if (k < 0) return 0.0;
  if (k_bar == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(k_bar) - k_bar - std::lgamma(k + 1.0));
}

double requests_sent_pmf(double k_bar, int n) {
  if (k_bar < 0.0) throw std::domain_error("requests_sent_pmf: k_bar >= 0");
  if (n < 0) return 0.0;
  if (k_bar == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::pow(1.0 + 1.0 / k_bar, -double(n)) / (1.0 + k_bar);
}

double epsilon_overload(int m_antennas, double k_bar) {
  if (m_antennas < 1) throw std::domain_error("epsilon_overload: M >= 1");
  if (k_bar < 0.0) throw std::domain_error("epsilon_overload: k_bar >= 0");
  if (m_antennas == 1) return 1.0;  // summand is identically 1
  if (k_bar == 0.0) return 0.0;
  const int dof = m_antennas - 1;
  double pmf = std::exp(-k_bar);  // p_K(0)
  double cum = 0.0;
  double eps = 0.0;
  for (int k = 0;; ++k) {
    if (k > 0) pmf *= k_bar / k;
    if (k >= dof) eps += (double(k + 1 - dof) / (k + 1)) * pmf;
    cum += pmf;
    if (k >= dof && 1.0 - cum < 1e-12) break;
    if (k > 100000)
      throw std::runtime_error("epsilon_overload: series did not truncate");
  }
  return eps;
}

std::pair<double, double> quantization_distortion(int m_antennas,
                                                  int feedback_bits) {
  if (m_antennas < 2)
    throw std::domain_error("quantization_distortion: M >= 2 required");
  if (feedback_bits < 0)
    throw std::domain_error("quantization_distortion: B >= 0");
  const double codebook = std::ldexp(1.0, feedback_bits);  // 2^B
  const double y = double(m_antennas) / (m_antennas - 1);
  // lgamma(n) - lgamma(n + y); the direct difference cancels catastrophically
  // for huge n, so switch to the Stirling expansion there.
  double log_ratio;
  if (codebook > 1e8)
    log_ratio = -y * std::log(codebook) - y * (y - 1.0) / (2.0 * codebook);
  else
    log_ratio = std::lgamma(codebook) - std::lgamma(codebook + y);
  const double kappa_i = std::exp(feedback_bits * std::log(2.0) +
                                  std::lgamma(y) + log_ratio);
  return {1.0 - kappa_i, kappa_i};
}

double q_coefficient(int i, double gamma_hat, double delta, double mu,
                     double epsilon) {
  check_q_inputs(gamma_hat, delta, mu, epsilon);
  if (i < 0) throw std::domain_error("q_coefficient: i >= 0");
  return q_two_term(i, gamma_hat, delta, mu, epsilon);
}

double q_coefficient_lf(int i, double gamma_hat, double delta, double mu,
                        double epsilon, double kappa_0, double kappa_i) {
  check_q_inputs(gamma_hat, delta, mu, epsilon);
  if (i < 0) throw std::domain_error("q_coefficient_lf: i >= 0");
  if (!(kappa_0 >= 1e-12))
    throw std::domain_error("q_coefficient_lf: kappa_0 below 1e-12");
  if (kappa_i < 0.0 || kappa_i >= 1.0)
    throw std::domain_error("q_coefficient_lf: kappa_I in [0,1)");
  double value = q_two_term(i, gamma_hat / kappa_0, delta, mu, epsilon);
  value += q_annulus_term(i, (kappa_i / kappa_0) * gamma_hat, delta, mu,
                          1.0 - epsilon);
  return value;
}

QCoefficients make_q_coefficients(int count, double gamma_hat, double delta,
                                  double mu, double epsilon) {
  QCoefficients q;
  q.gamma_hat = gamma_hat;
  q.delta = delta;
  q.mu = mu;
  q.epsilon = epsilon;
  q.values.reserve(count);
  for (int i = 0; i < count; ++i)
    q.values.push_back(q_coefficient(i, gamma_hat, delta, mu, epsilon));
  return q;
}

QCoefficients make_q_coefficients_lf(int count, double gamma_hat, double delta,
                                     double mu, double epsilon, double kappa_0,
                                     double kappa_i) {
  QCoefficients q;
  q.limited_feedback = true;
  q.kappa_0 = kappa_0;
  q.kappa_i = kappa_i;
  q.gamma_hat = gamma_hat;
  q.delta = delta;
  q.mu = mu;
  q.epsilon = epsilon;
  q.values.reserve(count);
  for (int i = 0; i < count; ++i)
    q.values.push_back(
        q_coefficient_lf(i, gamma_hat, delta, mu, epsilon, kappa_0, kappa_i));
  return q;
}

double ps_given_k(int l, double p_a, std::span<const double> q) {
  if (l < 1) throw std::domain_error("ps_given_k: l >= 1");
  if (int(q.size()) < l)
    throw std::domain_error("ps_given_k: need at least l coefficients");
  if (p_a < 0.0 || p_a > 1.0)
    throw std::domain_error("ps_given_k: p_a in [0,1]");
  const double diag = 1.0 + p_a * q[0];
  std::vector<double> x(l);
  x[0] = 1.0 / diag;
  double sum = x[0];
  for (int n = 1; n < l; ++n) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += q[n - j] * x[j];
    x[n] = p_a * acc / diag;
    if (x[n] < -1e-12)
      throw std::runtime_error(
          "ps_given_k: negative partial probability, numerical inconsistency");
    sum += x[n];
  }
  if (sum < 0.0 || sum > 1.0 + 1e-9)
    throw std::runtime_error("ps_given_k: result outside [0,1]");
  return std::min(sum, 1.0);
}

double ps_given_k_oracle(int l, double p_a, std::span<const double> q,
                         double lambda_b) {
  if (l < 1) throw std::domain_error("ps_given_k_oracle: l >= 1");
  if (int(q.size()) < l)
    throw std::domain_error("ps_given_k_oracle: need at least l coefficients");
  if (!(lambda_b > 0.0))
    throw std::domain_error("ps_given_k_oracle: lambda_b > 0");
  const double c = M_PI * lambda_b;
  auto integrand = [&](double r) {
    if (c * r * r > 700.0) return 0.0;  // association density underflows
    const double t = c * p_a * r * r;
    std::vector<double> a(l);
    a[0] = std::exp(-t * q[0]);
    double s = a[0];
    for (int n = 1; n < l; ++n) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        acc += (double(n - i) / n) * q[n - i] * a[i];
      a[n] = t * acc;
      s += a[n];
    }
    return s * 2.0 * c * r * std::exp(-c * r * r);
  };
  return integrate_halfline(integrand, 1e-8);
}

namespace {

MixtureResult mixture_from_q(const NetworkConfig& config,
                             const QCoefficients& q, double p_a, double k_bar,
                             double epsilon) {
  const int m = config.m_antennas;
  MixtureResult r;
  r.epsilon = epsilon;
  r.k_bar = k_bar;
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    const int l = m - k;
    const double pmf = requests_received_pmf(k_bar, k);
    const double psk = ps_given_k(l, p_a, q.values);
    r.per_k_terms.push_back({k, pmf, psk});
    total += pmf * psk;
  }
  // regularized gamma(M, k_bar)/(M-1)! equals the Poisson tail mass at k >= M
  r.tail = gamma_p(double(m), k_bar) / (1.0 + p_a * q.values[0]);
  total += r.tail;
  if (total < -1e-12 || total > 1.0 + 1e-9)
    throw std::runtime_error("ps_mixture: result outside [0,1]");
  r.ps = std::clamp(total, 0.0, 1.0);
  return r;
}

}  // namespace

MixtureResult ps_mixture(const NetworkConfig& config) {
  config.validate();
  if (config.feedback_bits)
    throw std::invalid_argument("ps_mixture: config has feedback_bits set");
  const double p_a = activity_probability(config.rho());
  const double k_bar = mean_requests(p_a, config.mu);
  const double eps =
      config.mu > 1.0 ? epsilon_overload(config.m_antennas, k_bar) : 0.0;
  auto q = make_q_coefficients(config.m_antennas, config.sinr_threshold,
                               config.delta(), config.mu, eps);
  return mixture_from_q(config, q, p_a, k_bar, eps);
}

MixtureResult ps_mixture_lf(const NetworkConfig& config) {
  config.validate();
  if (!config.feedback_bits)
    throw std::invalid_argument("ps_mixture_lf: config lacks feedback_bits");
  if (config.m_antennas < 2)
    throw std::invalid_argument("ps_mixture_lf: M >= 2 required");
  const double p_a = activity_probability(config.rho());
  const double k_bar = mean_requests(p_a, config.mu);
  const double eps =
      config.mu > 1.0 ? epsilon_overload(config.m_antennas, k_bar) : 0.0;
  auto [k0, ki] =
      quantization_distortion(config.m_antennas, *config.feedback_bits);
  auto q = make_q_coefficients_lf(config.m_antennas, config.sinr_threshold,
                                  config.delta(), config.mu, eps, k0, ki);
  return mixture_from_q(config, q, p_a, k_bar, eps);
}

double ps_analytic(const NetworkConfig& config) {
  return config.feedback_bits ? ps_mixture_lf(config).ps
                              : ps_mixture(config).ps;
}

}  // namespace ucin
