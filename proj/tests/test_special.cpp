#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "ucin/special.hpp"

TEST_CASE("regularized incomplete gamma, frozen values") {
  // integer shape: P(n, x) equals the Poisson tail mass at k >= n
  CHECK(ucin::gamma_p(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(ucin::gamma_p(8.0, 0.0) == 0.0);
  CHECK(ucin::gamma_q(3.0, 0.0) == 1.0);
  CHECK(ucin::gamma_p(0.5, 0.25) ==
        doctest::Approx(std::erf(0.5)).epsilon(1e-13));
}

TEST_CASE("incomplete gamma agrees with an independent implementation") {
  for (double a : {0.3, 1.0, 2.5, 8.0, 20.0, 100.0}) {
    for (double x : {0.01, 0.5, 1.0, 3.0, 10.0, 50.0, 200.0}) {
      CHECK(ucin::gamma_p(a, x) ==
            doctest::Approx(boost::math::gamma_p(a, x)).epsilon(1e-12));
      CHECK(ucin::gamma_p(a, x) + ucin::gamma_q(a, x) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(ucin::gamma_p(-1.0, 1.0), std::domain_error);
}

TEST_CASE("log_beta") {
  CHECK(std::exp(ucin::log_beta(2.0, 2.0)) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(std::exp(ucin::log_beta(1.0, 8.0 / 7.0)) ==
        doctest::Approx(7.0 / 8.0).epsilon(1e-13));
}
