#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ucin/config.hpp"

namespace ucin {

enum class Provenance { Analytic, Simulated };

/// A sweep of success probabilities, the unit of CLI output. Written as a CSV
/// body plus a JSON sidecar carrying the full provenance.
struct PsCurve {
  std::string sweep_name;  ///< e.g. "mu", "feedback_bits", "rho"
  struct Point {
    double x;
    double ps;
    std::optional<double> std_err;
  };
  std::vector<Point> points;
  Provenance provenance = Provenance::Analytic;
  NetworkConfig config;
  std::vector<std::string> extra_columns;  ///< optional additional series
  std::vector<std::vector<double>> extra_values;  ///< per point, per column

  /// Validates x strictly increasing and ps in [0,1]; throws otherwise.
  void check() const;

  std::string to_csv() const;
  void write_csv(const std::string& path) const;
  /// JSON sidecar: config echo, seed, tool version, timestamp.
  void write_sidecar(const std::string& path) const;
};

std::string tool_version();

}  // namespace ucin
