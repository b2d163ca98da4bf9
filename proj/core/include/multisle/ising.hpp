#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "multisle/ising_domain.hpp"
#include "multisle/pairing.hpp"
#include "multisle/random.hpp"

namespace msle {

/// 1/2 log(1 + sqrt 2)
double critical_beta() noexcept;

struct IsingParams {
  double beta = critical_beta();
};

/// Single-site heat-bath dynamics with the boundary-edge spins held fixed.
/// Starts from independent uniform face spins.
class GlauberChain {
 public:
  GlauberChain(const FaceDomain& domain, const BoundaryConditions& bc, IsingParams params, std::uint64_t seed);

  /// Resamples face f from its conditional law given the four neighbours.
  void update(std::size_t f);
  /// One sequential pass over all faces.
  void sweep();
  void run(std::size_t sweeps);

  const SpinConfiguration& state() const noexcept { return sigma_; }
  std::uint64_t sweep_count() const noexcept { return sweeps_; }

 private:
  const FaceDomain* domain_;
  SpinConfiguration sigma_;
  std::array<double, 5> p_plus_{};
  Rng rng_;
  std::uint64_t sweeps_ = 0;
};

struct SamplingPlan {
  std::size_t samples = 1000;
  /// Sweeps between recorded samples.
  std::size_t stride = 10;
  std::size_t burn_in = 1000;
  /// Independent chains; samples are split evenly between them.
  std::size_t chains = 1;
  std::size_t workers = 0;
};

struct PairingSample {
  std::size_t chain = 0;
  std::uint64_t chain_seed = 0;
  std::uint64_t sweep = 0;
  PlanarPairing pairing;
  double energy = 0.0;
};

/// Chain c uses derive_seed(seed, c). Samples are returned chain by chain.
std::vector<PairingSample> sample_pairings(const FaceDomain& domain, const BoundaryConditions& bc,
                                           IsingParams params, const SamplingPlan& plan, std::uint64_t seed);

inline constexpr std::size_t kMaxEnumerationFaces = 20;

/// Exact pairing law by summing Boltzmann weights over all 2^F face
/// configurations. Throws InvalidArgument above kMaxEnumerationFaces.
std::map<PlanarPairing, double> exact_pairing_distribution(const FaceDomain& domain, const BoundaryConditions& bc,
                                                           IsingParams params, std::size_t workers = 0);

}  // namespace msle
