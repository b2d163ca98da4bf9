#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace msle {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer applied to (seed, index); used to give every path,
/// chain or run its own independent stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

/// Standard normal draw by the polar Box–Muller method; identical on every
/// platform, unlike std::normal_distribution.
double standard_normal(Rng& rng) noexcept;

}  // namespace msle
