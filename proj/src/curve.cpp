#include "ucin/curve.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ucin {

std::string tool_version() { return "ucin 0.1.0"; }

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void PsCurve::check() const {
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].ps < 0.0 || points[i].ps > 1.0)
      throw std::runtime_error("PsCurve: ps outside [0,1]");
    if (i > 0 && !(points[i].x > points[i - 1].x))
      throw std::runtime_error("PsCurve: sweep values not strictly increasing");
  }
  if (!extra_columns.empty() && extra_values.size() != points.size())
    throw std::runtime_error("PsCurve: extra column size mismatch");
}

std::string PsCurve::to_csv() const {
  check();
  std::ostringstream os;
  os << sweep_name << ",ps [probability],std_err [probability]";
  for (const auto& c : extra_columns) os << "," << c;
  os << "\n";
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    os << fmt(p.x) << "," << fmt(p.ps) << ",";
    if (p.std_err) os << fmt(*p.std_err);
    for (size_t j = 0; !extra_columns.empty() && j < extra_columns.size(); ++j)
      os << "," << fmt(extra_values[i][j]);
    os << "\n";
  }
  return os.str();
}

void PsCurve::write_csv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << to_csv();
}

void PsCurve::write_sidecar(const std::string& path) const {
  nlohmann::json j;
  j["tool_version"] = tool_version();
  j["sweep"] = sweep_name;
  j["provenance"] =
      provenance == Provenance::Analytic ? "analytic" : "simulated";
  j["seed"] = config.seed;
  j["timestamp_unix"] = std::chrono::duration_cast<std::chrono::seconds>(
                            std::chrono::system_clock::now().time_since_epoch())
                            .count();
  nlohmann::json c;
  c["lambda_b"] = config.lambda_b;
  c["lambda_u"] = config.lambda_u;
  c["m_antennas"] = config.m_antennas;
  c["alpha"] = config.alpha;
  c["sinr_threshold"] = config.sinr_threshold;
  c["mu"] = config.mu;
  if (config.feedback_bits) c["feedback_bits"] = *config.feedback_bits;
  c["window_side"] = config.effective_window_side();
  c["n_realizations"] = config.n_realizations;
  c["seed"] = config.seed;
  j["config"] = c;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << "\n";
}

}  // namespace ucin
