#include "multisle/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "multisle/error.hpp"

namespace msle {

BoundaryConfig::BoundaryConfig(std::vector<double> points) : x_(std::move(points)) {
  if (x_.size() < 2 || x_.size() % 2 != 0) {
    throw InvalidArgument("boundary config needs an even number of points, at least 2");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i])) throw InvalidArgument("boundary points must be finite");
    if (i > 0 && !(x_[i - 1] < x_[i])) {
      throw OrderBroken("boundary points must be strictly increasing");
    }
  }
}

double BoundaryConfig::min_gap() const noexcept {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < x_.size(); ++i) g = std::min(g, x_[i] - x_[i - 1]);
  return g;
}

double BoundaryConfig::local_gap(std::size_t i) const noexcept {
  double g = std::numeric_limits<double>::infinity();
  if (i > 0) g = x_[i] - x_[i - 1];
  if (i + 1 < x_.size()) g = std::min(g, x_[i + 1] - x_[i]);
  return g;
}

BoundaryConfig BoundaryConfig::with_point(std::size_t i, double value) const {
  std::vector<double> y = x_;
  y.at(i) = value;
  return BoundaryConfig(std::move(y));
}

void require_nondegenerate(const BoundaryConfig& config) {
  if (config.min_gap() < 1e-12 * config.span()) {
    std::ostringstream os;
    os << "degenerate configuration: gap " << config.min_gap() << " below 1e-12 of span";
    throw Degenerate(os.str());
  }
}

MoebiusTransform::MoebiusTransform(double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (!(determinant() > 0.0) || !std::isfinite(determinant())) {
    throw InvalidArgument("Moebius map needs ad - bc > 0");
  }
}

double MoebiusTransform::operator()(double x) const {
  const double den = c_ * x + d_;
  if (den == 0.0) throw PoleHit("point on the pole of the Moebius map");
  return (a_ * x + b_) / den;
}

double MoebiusTransform::derivative(double x) const {
  const double den = c_ * x + d_;
  if (den == 0.0) throw PoleHit("point on the pole of the Moebius map");
  return determinant() / (den * den);
}

MoebiusImage apply_moebius(const MoebiusTransform& map, const BoundaryConfig& config) {
  std::vector<double> y(config.size());
  std::vector<double> dphi(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    y[i] = map(config[i]);
    dphi[i] = map.derivative(config[i]);
    if (i > 0 && !(y[i - 1] < y[i])) {
      throw OrderBroken("Moebius map does not preserve the order of the configuration");
    }
  }
  return {BoundaryConfig(std::move(y)), std::move(dphi)};
}

MoebiusTransform random_order_preserving_map(const BoundaryConfig& config, Rng& rng) {
  const double scale = config.span();
  const double t = 4.0 * uniform01(rng) - 2.0;
  if (uniform01(rng) < 0.25) {
    return {std::exp(2.0 * uniform01(rng) - 1.0), t * scale, 0.0, 1.0};
  }
  const double offset = scale * std::exp(3.0 * uniform01(rng) - 2.0);
  const double pole = uniform01(rng) < 0.5 ? config[0] - offset : config[config.size() - 1] + offset;
  const double s = scale * scale * std::exp(2.0 * uniform01(rng) - 1.0);
  // x -> t - s / (x - pole)
  return {t, -t * pole - s, 1.0, -pole};
}

BoundaryConfig random_config(std::size_t n_pairs, Rng& rng) {
  std::vector<double> x(2 * n_pairs);
  double pos = 4.0 * uniform01(rng) - 2.0;
  for (auto& xi : x) {
    xi = pos;
    pos += 0.2 + 2.0 * uniform01(rng);
  }
  return BoundaryConfig(std::move(x));
}

KappaParams::KappaParams(double kappa) : kappa_(kappa), h_((6.0 - kappa) / (2.0 * kappa)) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa must be positive");
}

CrossRatio cross_ratio(const BoundaryConfig& x) {
  if (x.size() != 4) throw InvalidArgument("cross ratio needs exactly four points");
  return {(x[1] - x[0]) * (x[3] - x[2]) / ((x[2] - x[0]) * (x[3] - x[1]))};
}

BoundaryConfig config_with_cross_ratio(double z, double shape) {
  if (!(z > 0.0 && z < 1.0)) throw InvalidArgument("cross ratio must lie in (0, 1)");
  if (!(shape > 1.0)) throw InvalidArgument("shape must exceed 1");
  return BoundaryConfig({0.0, z * shape / (shape - 1.0 + z), 1.0, shape});
}

}  // namespace msle
