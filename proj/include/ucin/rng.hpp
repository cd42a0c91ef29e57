#pragma once

#include <cstdint>
#include <random>

namespace ucin {

/// Independent RNG stream for one Monte Carlo realization, keyed by the
/// master seed and the realization index. Workers never share streams.
inline std::mt19937_64 make_stream(std::uint64_t master_seed,
                                   std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace ucin
