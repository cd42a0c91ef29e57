// Python bindings for the interference-nulling toolkit.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>

#include "ucin/analytics.hpp"
#include "ucin/config.hpp"
#include "ucin/optimizer.hpp"
#include "ucin/simulator.hpp"

namespace py = pybind11;
using namespace ucin;

namespace {

Strategy make_strategy(const std::string& name, const NetworkConfig& cfg,
                       int n_requests, double cluster_size) {
  if (name == "user-centric") return UserCentric{cfg.mu};
  if (name == "non-coordination") return NonCoordination{};
  if (name == "fixed-number") return FixedNumber{n_requests};
  if (name == "random-clustering") return RandomClustering{cluster_size};
  throw std::invalid_argument("unknown strategy: " + name);
}

}  // namespace

PYBIND11_MODULE(pyucin, m) {
  m.doc() = "User-centric intercell interference nulling: closed-form "
            "coverage analysis and Monte Carlo simulation";

  py::class_<NetworkConfig>(m, "NetworkConfig")
      .def(py::init<>())
      .def_readwrite("lambda_b", &NetworkConfig::lambda_b)
      .def_readwrite("lambda_u", &NetworkConfig::lambda_u)
      .def_readwrite("m_antennas", &NetworkConfig::m_antennas)
      .def_readwrite("alpha", &NetworkConfig::alpha)
      .def_readwrite("sinr_threshold", &NetworkConfig::sinr_threshold)
      .def_readwrite("mu", &NetworkConfig::mu)
      .def_readwrite("feedback_bits", &NetworkConfig::feedback_bits)
      .def_readwrite("window_side", &NetworkConfig::window_side)
      .def_readwrite("n_realizations", &NetworkConfig::n_realizations)
      .def_readwrite("seed", &NetworkConfig::seed)
      .def("rho", &NetworkConfig::rho)
      .def("delta", &NetworkConfig::delta)
      .def("validate", &NetworkConfig::validate)
      .def("serialize", &NetworkConfig::serialize)
      .def_static("parse", &NetworkConfig::parse)
      .def("__eq__", [](const NetworkConfig& a, const NetworkConfig& b) {
        return a == b;
      });

  py::class_<MixtureResult>(m, "MixtureResult")
      .def_readonly("ps", &MixtureResult::ps)
      .def_readonly("epsilon", &MixtureResult::epsilon)
      .def_readonly("k_bar", &MixtureResult::k_bar)
      .def_readonly("tail", &MixtureResult::tail);

  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("argmax", &OptimizationResult::argmax)
      .def_readonly("value", &OptimizationResult::value)
      .def_readonly("feasible", &OptimizationResult::feasible)
      .def_readonly("trace", &OptimizationResult::trace);

  py::class_<CoverageEstimate>(m, "CoverageEstimate")
      .def_readonly("p_hat", &CoverageEstimate::p_hat)
      .def_readonly("std_err", &CoverageEstimate::std_err)
      .def_readonly("n", &CoverageEstimate::n);

  m.def("activity_probability", &activity_probability, py::arg("rho"));
  m.def("mean_requests", &mean_requests, py::arg("p_a"), py::arg("mu"));
  m.def("epsilon_overload", &epsilon_overload, py::arg("m_antennas"),
        py::arg("k_bar"));
  m.def("quantization_distortion", &quantization_distortion,
        py::arg("m_antennas"), py::arg("feedback_bits"),
        "Returns (kappa_0, kappa_I)");
  m.def("q_coefficient", &q_coefficient, py::arg("i"), py::arg("gamma_hat"),
        py::arg("delta"), py::arg("mu"), py::arg("epsilon"));
  m.def(
      "ps_given_k",
      [](int l, double p_a, const std::vector<double>& q) {
        return ps_given_k(l, p_a, q);
      },
      py::arg("l"), py::arg("p_a"), py::arg("q"));
  m.def("ps_mixture", &ps_mixture, py::arg("config"));
  m.def("ps_mixture_lf", &ps_mixture_lf, py::arg("config"));
  m.def("ps_analytic", &ps_analytic, py::arg("config"));

  m.def(
      "optimal_mu",
      [](const NetworkConfig& cfg, double mu_max) {
        return optimal_mu(cfg, mu_max, [&cfg](double mu) {
          NetworkConfig c = cfg;
          c.mu = mu;
          return ps_analytic(c);
        });
      },
      py::arg("config"), py::arg("mu_max") = 4.0,
      "Closed-form optimal nulling range coefficient");

  m.def(
      "min_density_ratio",
      [](const NetworkConfig& cfg, double target_ps, const std::string& mode,
         double rho_lo, double rho_hi) {
        RatioStrategy s;
        if (mode == "proposed")
          s = RatioStrategy::Proposed;
        else if (mode == "non-coordination")
          s = RatioStrategy::NonCoordination;
        else
          throw std::invalid_argument("mode must be 'proposed' or "
                                      "'non-coordination'");
        return min_density_ratio(cfg, target_ps, s, rho_lo, rho_hi);
      },
      py::arg("config"), py::arg("target_ps"), py::arg("mode") = "proposed",
      py::arg("rho_lo") = 1.0 / 64.0, py::arg("rho_hi") = 32.0);

  m.def(
      "estimate_ps",
      [](const NetworkConfig& cfg, const std::string& strategy, int n_requests,
         double cluster_size, int n_threads) {
        auto s = make_strategy(strategy, cfg, n_requests, cluster_size);
        py::gil_scoped_release release;
        return estimate_ps(cfg, s, n_threads);
      },
      py::arg("config"), py::arg("strategy") = "user-centric",
      py::arg("n_requests") = 1, py::arg("cluster_size") = 4.0,
      py::arg("n_threads") = 0,
      "Monte Carlo coverage estimate; deterministic for fixed (config, seed)");
}
