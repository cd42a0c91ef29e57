#include "ucin/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ucin {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

double NetworkConfig::effective_window_side() const {
  if (window_side > 0.0) return window_side;
  return std::sqrt(500.0 / lambda_b);
}

double NetworkConfig::expected_bs_count() const {
  double side = effective_window_side();
  return lambda_b * side * side;
}

void NetworkConfig::validate() const {
  if (!(lambda_b > 0.0)) throw std::invalid_argument("lambda_b > 0 violated");
  if (!(lambda_u > 0.0)) throw std::invalid_argument("lambda_u > 0 violated");
  if (m_antennas < 1) throw std::invalid_argument("m_antennas >= 1 violated");
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha > 2 violated");
  if (!(sinr_threshold > 0.0))
    throw std::invalid_argument("sinr_threshold > 0 violated");
  if (!(mu >= 1.0)) throw std::invalid_argument("mu >= 1 violated");
  if (feedback_bits && *feedback_bits < 0)
    throw std::invalid_argument("feedback_bits >= 0 violated");
  if (n_realizations < 1)
    throw std::invalid_argument("n_realizations >= 1 violated");
}

std::string NetworkConfig::serialize() const {
  std::ostringstream os;
  os.precision(17);
  os << "lambda_b = " << lambda_b << "\n";
  os << "lambda_u = " << lambda_u << "\n";
  os << "m_antennas = " << m_antennas << "\n";
  os << "alpha = " << alpha << "\n";
  os << "sinr_threshold = " << sinr_threshold << "\n";
  os << "mu = " << mu << "\n";
  if (feedback_bits) os << "feedback_bits = " << *feedback_bits << "\n";
  os << "window_side = " << window_side << "\n";
  os << "n_realizations = " << n_realizations << "\n";
  os << "seed = " << seed << "\n";
  return os.str();
}

NetworkConfig NetworkConfig::parse(const std::string& text) {
  NetworkConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config parse error at line " +
                                  std::to_string(lineno) + ": missing '='");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "lambda_b") cfg.lambda_b = std::stod(val);
      else if (key == "lambda_u") cfg.lambda_u = std::stod(val);
      else if (key == "m_antennas") cfg.m_antennas = std::stoi(val);
      else if (key == "alpha") cfg.alpha = std::stod(val);
      else if (key == "sinr_threshold") cfg.sinr_threshold = std::stod(val);
      else if (key == "mu") cfg.mu = std::stod(val);
      else if (key == "feedback_bits") cfg.feedback_bits = std::stoi(val);
      else if (key == "window_side") cfg.window_side = std::stod(val);
      else if (key == "n_realizations") cfg.n_realizations = std::stoi(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else
        throw std::invalid_argument("config parse error: unknown key '" + key +
                                    "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config parse error at line " +
                                  std::to_string(lineno) + ": bad value for '" +
                                  key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

NetworkConfig NetworkConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return parse(os.str());
}

void NetworkConfig::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write config file: " + path);
  f << serialize();
}

}  // namespace ucin
