#include "multisle/elliptic.hpp"

#include <cmath>
#include <numbers>

#include "multisle/error.hpp"

namespace msle {
namespace {

struct Moduli {
  double k;
  double kp;
};

// k / k' = exp(u), evaluated without overflow.
Moduli moduli_from_log_ratio(double u) {
  if (u >= 0.0) {
    const double e = std::exp(-u);
    const double r = 1.0 / std::sqrt(1.0 + e * e);
    return {r, e * r};
  }
  const double e = std::exp(u);
  const double r = 1.0 / std::sqrt(1.0 + e * e);
  return {e * r, r};
}

}  // namespace

double agm(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("agm needs positive arguments");
  for (int it = 0; it < 200; ++it) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    a = an;
    b = bn;
    if (std::abs(a - b) <= 1e-14 * a) return 0.5 * (a + b);
  }
  throw NumericalFailure("agm did not converge");
}

double elliptic_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw InvalidArgument("elliptic_k needs 0 <= k < 1");
  return std::numbers::pi / (2.0 * agm(1.0, std::sqrt((1.0 - k) * (1.0 + k))));
}

double rectangle_modulus(double aspect) {
  if (!(aspect > 0.0) || !std::isfinite(aspect)) throw InvalidArgument("aspect must be positive");
  const double target = 2.0 * aspect;
  // K(k')/K(k) = agm(1, k') / agm(1, k) decreases in u = log(k / k').
  auto ratio = [](double u) {
    const auto m = moduli_from_log_ratio(u);
    return agm(1.0, m.kp) / agm(1.0, m.k);
  };
  double lo = -700.0, hi = 700.0;
  if (!(ratio(lo) > target && ratio(hi) < target)) {
    throw NumericalFailure("rectangle modulus: aspect outside the bisection bracket");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) > target ? lo : hi) = mid;
  }
  return moduli_from_log_ratio(0.5 * (lo + hi)).k;
}

BoundaryConfig rect_corner_preimages(double aspect) {
  const double k = rectangle_modulus(aspect);
  return BoundaryConfig({-1.0 / k, -1.0, 1.0, 1.0 / k});
}

BoundaryConfig rectangle_ccw_corner_config(double aspect) {
  const auto x = rect_corner_preimages(aspect);
  const double pole = 0.5 * (x[0] + x[1]);
  const MoebiusTransform phi(0.0, -1.0, 1.0, -pole);
  return BoundaryConfig({phi(x[1]), phi(x[2]), phi(x[3]), phi(x[0])});
}

}  // namespace msle
