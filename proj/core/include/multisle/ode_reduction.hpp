#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "multisle/geometry.hpp"
#include "multisle/pairing.hpp"

namespace msle {

/// Coefficients of F'' + a1 F' + a0 F = 0 at one cross ratio, with the
/// relative least-squares residual of the extraction.
struct OdeCoefficients {
  double a1 = 0.0;
  double a0 = 0.0;
  double residual = 0.0;
};

/// Shape parameters L > 1 of the sampled configurations (0, x2, 1, L).
std::span<const double> default_sample_shapes();
std::span<const double> alternate_sample_shapes();

/// Applies the first-point operator to ((x2-x1)(x4-x3))^{-2h} F(z) on every
/// sampled configuration with cross ratio z and fits the common ODE.
OdeCoefficients ode_coefficients(const KappaParams& params, double z,
                                 std::span<const double> shapes = default_sample_shapes());

struct OdeReduction {
  KappaParams params{1.0};
  std::vector<double> z;
  std::vector<double> a2;
  std::vector<double> a1;
  std::vector<double> a0;
  /// Limits of z a1(z) and z^2 a0(z) at z = 0.
  double p0 = 0.0;
  double q0 = 0.0;
  /// Indicial exponents at z = 0, ascending.
  std::array<double, 2> exponents_at_zero{};
  double max_residual = 0.0;
};

/// Throws NumericalFailure when the extraction residual exceeds 1e-8.
OdeReduction reduce_to_ode(const KappaParams& params, std::size_t grid_points = 257,
                           std::span<const double> shapes = default_sample_shapes());

/// Solutions of the reduced ODE used to build the N = 2 pure partition
/// functions. G is the branch with the larger exponent s at 0 (G ~ z^s) and
/// H the branch with exponent 2/kappa at 1, scaled so that H(0) = 1.
class PureChannelTable {
 public:
  static constexpr double delta = 1e-4;
  /// Start of the integration; the two-term Frobenius seed is used below it.
  static constexpr double seed_point = 1e-7;

  explicit PureChannelTable(const KappaParams& params, std::size_t intervals = 512);

  const KappaParams& params() const noexcept { return params_; }
  const OdeReduction& reduction() const noexcept { return reduction_; }
  double exponent() const noexcept { return s_; }
  /// lim_{z->0} of the unscaled rotated branch.
  double normalization() const noexcept { return norm_; }

  /// G and G' on (0, 1 - delta].
  std::array<double, 2> small_branch(double z) const;
  /// H(z) on (0, 1).
  double branch(double z) const;

 private:
  double unscaled_branch(double z) const;

  KappaParams params_;
  OdeReduction reduction_;
  double s_ = 0.0;
  double p1_ = 0.0;
  double q1_ = 0.0;
  double g1_ = 0.0;
  double norm_ = 1.0;
  bool integer_exponent_ = false;
  std::array<double, 4> near_zero_{};
  std::array<double, 3> near_one_{};
  std::vector<double> nodes_;
  std::vector<std::array<double, 2>> values_;
};

/// Shared, lazily built table for 0 < kappa < 8.
const PureChannelTable& pure_channel_table(const KappaParams& params);

/// Pure partition function of an N = 2 pairing:
/// {{1,2},{3,4}}: ((x2-x1)(x4-x3))^{-2h} H(z),
/// {{1,4},{2,3}}: ((x4-x1)(x3-x2))^{-2h} H(1-z).
double pure_Z(const KappaParams& params, const BoundaryConfig& config, const PlanarPairing& pairing);

}  // namespace msle
