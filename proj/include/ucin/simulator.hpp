#pragma once

#include <complex>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ucin/config.hpp"
#include "ucin/geometry.hpp"

namespace ucin {

/// Complex channel / precoding vector; dimension M, stack-allocated up to 32.
using CVec =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1, 0, 32, 1>;

struct UserCentric {
  double mu;
};
struct NonCoordination {};
struct FixedNumber {
  int n_requests;
};
struct RandomClustering {
  double mean_cluster_size;
};
using Strategy =
    std::variant<UserCentric, NonCoordination, FixedNumber, RandomClustering>;

struct CoverageEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  int n = 0;
  NetworkConfig config;
};

struct DegenerateChannelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// i.i.d. CN(0,1) entries: unit variance per complex component.
CVec draw_channel(int m_antennas, std::mt19937_64& rng);

/// Zero-forcing beamformer: unit-norm projection of h onto the orthogonal
/// complement of span(nulled). Throws DegenerateChannelError if the
/// projection is numerically zero.
CVec zf_precoder(const CVec& h, const std::vector<CVec>& nulled);

/// Quantized channel direction under RVQ with B bits, sampled from the exact
/// law P(sin^2 theta > x) = (1 - x^(M-1))^(2^B).
CVec rvq_quantize(const CVec& h_dir, int feedback_bits, std::mt19937_64& rng);

/// Explicit-codebook RVQ (2^B random unit codewords, max inner product);
/// practical only for small B.
CVec rvq_quantize_codebook(const CVec& h_dir, int feedback_bits,
                           std::mt19937_64& rng);

/// SIR of the typical user for a fully resolved realization. Channels are
/// sampled lazily inside. Returns +inf when there is no interferer.
double sinr_typical(const NetworkRealization& realization, const Window& window,
                    int m_antennas, double alpha,
                    std::optional<int> feedback_bits, std::mt19937_64& rng);

/// Fixed-number baseline: each scheduled user requests its n nearest active
/// interfering BSs (all of them when fewer are present), then DoF-capped
/// grant resolution as usual.
void fixed_number_requests(NetworkRealization& realization, int n_requests,
                           int m_antennas, const Window& window,
                           std::mt19937_64& rng);

/// Random BS clustering baseline: a uniformly shifted square super-grid with
/// cell area mean_cluster_size / lambda_b partitions the BSs; each active BS
/// nulls toward the scheduled users of the other BSs in its cluster.
void random_clustering(NetworkRealization& realization,
                       double mean_cluster_size, int m_antennas,
                       double lambda_b, const Window& window,
                       std::mt19937_64& rng);

/// Monte Carlo estimate of P(SIR >= threshold) over config.n_realizations
/// independent realizations. Deterministic for a fixed (config, seed),
/// regardless of worker count.
CoverageEstimate estimate_ps(const NetworkConfig& config,
                             const Strategy& strategy, int n_threads = 0);

}  // namespace ucin
