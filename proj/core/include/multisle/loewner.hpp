#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "multisle/geometry.hpp"
#include "multisle/partition.hpp"
#include "multisle/random.hpp"

namespace msle {

enum class NoiseMode { Gaussian, Zero };

/// Brownian increments for the driving function. Zero mode returns 0.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed, NoiseMode mode = NoiseMode::Gaussian)
      : seed_(seed), mode_(mode), rng_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  NoiseMode mode() const noexcept { return mode_; }
  /// A standard normal draw (or 0 in zero mode).
  double standard_draw() { return mode_ == NoiseMode::Zero ? 0.0 : standard_normal(rng_); }

 private:
  std::uint64_t seed_;
  NoiseMode mode_;
  Rng rng_;
};

enum class StopReason { Running, Cap, Exit, Swallow };

std::string to_string(StopReason reason);

struct LoewnerState {
  double W = 0.0;
  /// Marked-point images; slot j mirrors W.
  std::vector<double> V;
  double t = 0.0;
  std::size_t j = 0;
  bool alive = true;
  StopReason reason = StopReason::Running;
  /// Initial span of the configuration; sets the swallowing threshold.
  double scale = 1.0;
  double drift_integral = 0.0;
  std::size_t steps = 0;

  /// (V^1, ..., W, ..., V^{2N}) as a configuration.
  BoundaryConfig config() const;
};

LoewnerState initial_state(const BoundaryConfig& config, std::size_t j);

struct Localization {
  std::size_t j = 0;
  double radius = 0.0;
  double capacity_cap = 0.0;

  /// Capacity cap radius^2 / 4.
  static Localization around(std::size_t j, double radius);
  /// Throws InvalidArgument unless radius is below the distance to the
  /// nearest other marked point.
  void validate(const BoundaryConfig& config) const;
};

/// kappa * d_j log Z at the current configuration.
double drift(const PartitionEvaluator& z, const LoewnerState& state);

/// One Euler–Maruyama step with dt capped at 1e-3 * min_gap^2. A step that
/// breaks the ordering is retried with half the step, up to 20 times.
LoewnerState advance(const LoewnerState& state, double dt, NoiseSource& noise,
                     const PartitionEvaluator& z);

struct PathRecord {
  std::vector<double> times;
  std::vector<double> W;
  std::vector<std::vector<double>> V;
  StopReason reason = StopReason::Running;
  LoewnerState final_state;

  std::size_t steps() const noexcept { return times.empty() ? 0 : times.size() - 1; }
};

/// Runs until the capacity cap or |W - W0| >= radius or swallowing.
/// With record_path false only the initial and final points are kept.
PathRecord simulate(const BoundaryConfig& config, const Localization& loc, const PartitionEvaluator& z,
                    double dt, NoiseSource& noise, bool record_path = true);

struct PathSummary {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double w0 = 0.0;
  double w_final = 0.0;
  double t_final = 0.0;
  double drift_integral = 0.0;
  std::size_t steps = 0;
  StopReason reason = StopReason::Running;
};

/// Independent paths with seeds derive_seed(seed, index).
std::vector<PathSummary> run_ensemble(const BoundaryConfig& config, const Localization& loc,
                                      const PartitionEvaluator& z, double dt, std::size_t n_paths,
                                      std::uint64_t seed, std::size_t workers = 0);

struct MartingaleReport {
  double m0 = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  double deviation = 0.0;
  std::size_t n_paths = 0;
  std::size_t cap_stops = 0;
  std::size_t exit_stops = 0;
  std::size_t swallow_stops = 0;
};

/// M = Z_num / Z_den along paths driven by Z_den; compares the mean of M at
/// the stopping time with M at time 0.
MartingaleReport martingale_diagnostic(const PartitionEvaluator& z_num, const PartitionEvaluator& z_den,
                                       const BoundaryConfig& config, const Localization& loc, double dt,
                                       std::size_t n_paths, std::uint64_t seed, std::size_t workers = 0);

}  // namespace msle
