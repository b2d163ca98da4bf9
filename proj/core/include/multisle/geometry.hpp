#pragma once

#include <cstddef>
#include <vector>

#include "multisle/random.hpp"

namespace msle {

/// Strictly increasing marked points x_1 < ... < x_{2N} on the real line.
class BoundaryConfig {
 public:
  explicit BoundaryConfig(std::vector<double> points);

  std::size_t size() const noexcept { return x_.size(); }
  std::size_t n_pairs() const noexcept { return x_.size() / 2; }
  double operator[](std::size_t i) const noexcept { return x_[i]; }
  const std::vector<double>& points() const noexcept { return x_; }
  auto begin() const noexcept { return x_.begin(); }
  auto end() const noexcept { return x_.end(); }

  double span() const noexcept { return x_.back() - x_.front(); }
  double min_gap() const noexcept;
  /// Distance from x_i to its nearest neighbour.
  double local_gap(std::size_t i) const noexcept;

  /// Copy with x_i replaced; throws OrderBroken if the order is lost.
  BoundaryConfig with_point(std::size_t i, double value) const;

  bool operator==(const BoundaryConfig&) const = default;

 private:
  std::vector<double> x_;
};

/// Throws Degenerate when some gap is below 1e-12 of the span.
void require_nondegenerate(const BoundaryConfig& config);

/// x -> (a x + b) / (c x + d) with ad - bc > 0.
class MoebiusTransform {
 public:
  MoebiusTransform(double a, double b, double c, double d);

  static MoebiusTransform translation(double shift) { return {1.0, shift, 0.0, 1.0}; }
  static MoebiusTransform scaling(double factor) { return {factor, 0.0, 0.0, 1.0}; }
  static MoebiusTransform inversion() { return {0.0, -1.0, 1.0, 0.0}; }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }
  double determinant() const noexcept { return a_ * d_ - b_ * c_; }

  double operator()(double x) const;
  double derivative(double x) const;

 private:
  double a_, b_, c_, d_;
};

struct MoebiusImage {
  BoundaryConfig config;
  std::vector<double> derivatives;
};

MoebiusImage apply_moebius(const MoebiusTransform& map, const BoundaryConfig& config);

/// Random map keeping the order of `config`: an affine map, or a map whose
/// pole lies strictly outside [x_1, x_{2N}].
MoebiusTransform random_order_preserving_map(const BoundaryConfig& config, Rng& rng);

/// Random ordered config of 2N points with gaps drawn from [0.2, 2.2).
BoundaryConfig random_config(std::size_t n_pairs, Rng& rng);

/// SLE parameter and the boundary weight h = (6 - kappa) / (2 kappa).
class KappaParams {
 public:
  explicit KappaParams(double kappa);
  double kappa() const noexcept { return kappa_; }
  double h() const noexcept { return h_; }
  bool operator==(const KappaParams&) const = default;

 private:
  double kappa_;
  double h_;
};

struct CrossRatio {
  double z;
};

/// z = (x2 - x1)(x4 - x3) / ((x3 - x1)(x4 - x2)); z -> 0 as x2 -> x1.
CrossRatio cross_ratio(const BoundaryConfig& config);

/// (0, x2, 1, shape) with x2 chosen so that the cross ratio equals z.
BoundaryConfig config_with_cross_ratio(double z, double shape = 2.5);

}  // namespace msle
