#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ucin {

/// Scenario parameters shared by the analytic engine, the optimizer and the
/// Monte Carlo simulator. Immutable after validation; safe to share between
/// threads.
struct NetworkConfig {
  double lambda_b = 1e-3;        ///< BS density per unit area (> 0)
  double lambda_u = 1e-2;        ///< user density per unit area (> 0)
  int m_antennas = 8;            ///< antennas per BS, M >= 1
  double alpha = 4.0;            ///< path loss exponent, > 2
  double sinr_threshold = 10.0;  ///< SIR threshold, linear scale, > 0
  double mu = 1.0;               ///< nulling range coefficient, >= 1
  std::optional<int> feedback_bits;  ///< absent means perfect CSI
  double window_side = 0.0;      ///< square window side; <= 0 picks the default
  int n_realizations = 10000;
  std::uint64_t seed = 1;

  double rho() const { return lambda_b / lambda_u; }
  double delta() const { return 2.0 / alpha; }

  /// Side length giving 500 expected BSs, used when window_side <= 0.
  double effective_window_side() const;
  double expected_bs_count() const;

  /// Throws std::invalid_argument naming the violated invariant.
  void validate() const;

  /// True when the expected BS count in the window is below 100.
  bool window_too_small() const { return expected_bs_count() < 100.0; }

  std::string serialize() const;
  static NetworkConfig parse(const std::string& text);
  static NetworkConfig load(const std::string& path);
  void save(const std::string& path) const;

  bool operator==(const NetworkConfig&) const = default;
};

}  // namespace ucin
