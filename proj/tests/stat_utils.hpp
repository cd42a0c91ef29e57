#pragma once

// Small statistical test helpers shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ucin/special.hpp"

namespace ucin::testutil {

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = double(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - double(i) / n));
    d = std::max(d, std::abs(double(i + 1) / n - f));
  }
  return d;
}

/// True when the one-sample KS test does not reject at level alpha.
inline bool ks_pass(const std::vector<double>& samples,
                    const std::function<double(double)>& cdf,
                    double alpha = 0.01) {
  // asymptotic critical value c(alpha)/sqrt(n)
  double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return ks_statistic(samples, cdf) < c / std::sqrt(double(samples.size()));
}

/// Two-sample KS test (true = not rejected at level alpha).
inline bool ks2_pass(std::vector<double> a, std::vector<double> b,
                     double alpha = 0.01) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  double en = std::sqrt(double(a.size()) * b.size() /
                        double(a.size() + b.size()));
  return d < c / en;
}

/// Chi-squared goodness-of-fit p-value from observed counts and expected
/// counts (same length); bins with expected < 5 should be merged upstream.
inline double chi2_pvalue(const std::vector<double>& observed,
                          const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw std::invalid_argument("chi2_pvalue: bad bins");
  double stat = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  double df = double(observed.size() - 1);
  return gamma_q(df / 2.0, stat / 2.0);
}

}  // namespace ucin::testutil
