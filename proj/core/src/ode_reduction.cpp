#include "multisle/ode_reduction.hpp"

#include <algorithm>
#include <Eigen/LU>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "multisle/error.hpp"

namespace msle {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

constexpr std::array<double, 4> kDefaultShapes{1.5, 2.5, 4.0, 7.0};
constexpr std::array<double, 4> kAlternateShapes{1.25, 3.0, 5.5, 10.0};
constexpr double kAbsTol = 1e-16;
constexpr double kRelTol = 1e-13;

struct Row {
  double c2, c1, c0;
};

// Gaps are passed directly so that short gaps near z = 0 or z = 1 carry no
// cancellation error.
Row operator_row(double kappa, double h, double x21, double x32, double x43, double z) {
  const double x31 = x21 + x32, x42 = x32 + x43, x41 = x21 + x32 + x43;
  const double g1 = -1.0 / x21 + 1.0 / x31;
  const double z1 = z * g1;
  const double z11 = z * (g1 * g1 - 1.0 / (x21 * x21) + 1.0 / (x31 * x31));
  const std::array<double, 3> zi{z * (1.0 / x21 + 1.0 / x42), z * (-1.0 / x43 - 1.0 / x31),
                                 z * (1.0 / x43 - 1.0 / x42)};
  const double lp1 = 2.0 * h / x21;
  const std::array<double, 3> lpi{-2.0 * h / x21, 2.0 * h / x43, -2.0 * h / x43};
  const std::array<double, 3> di{x21, x31, x41};

  Row r{};
  r.c2 = 0.5 * kappa * z1 * z1;
  r.c1 = 0.5 * kappa * (2.0 * lp1 * z1 + z11);
  r.c0 = 0.5 * kappa * (lp1 * lp1 + 2.0 * h / (x21 * x21));
  for (int i = 0; i < 3; ++i) {
    r.c1 += 2.0 / di[i] * zi[i];
    r.c0 += 2.0 / di[i] * lpi[i] - 2.0 * h / (di[i] * di[i]);
  }
  return r;
}

// Polynomial extrapolation to 0 through (t_k, f_k) by Neville's scheme.
double extrapolate_to_zero(std::vector<double> t, std::vector<double> f) {
  const std::size_t n = t.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      f[i] = (t[i + m] * f[i] - t[i] * f[i + 1]) / (t[i + m] - t[i]);
    }
  }
  return f[0];
}

std::vector<double> cosine_grid(double lo, double hi, std::size_t intervals) {
  std::vector<double> g(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    g[k] = lo + (hi - lo) * 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(k) /
                                                  static_cast<double>(intervals)));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace

std::span<const double> default_sample_shapes() { return kDefaultShapes; }
std::span<const double> alternate_sample_shapes() { return kAlternateShapes; }

OdeCoefficients ode_coefficients(const KappaParams& params, double z, std::span<const double> shapes) {
  if (!(z > 0.0 && z < 1.0)) throw InvalidArgument("cross ratio must lie in (0, 1)");
  if (shapes.empty()) throw InvalidArgument("need at least one sampled configuration");
  std::vector<std::array<double, 2>> rows;
  rows.reserve(shapes.size());
  for (std::size_t m = 0; m < shapes.size(); ++m) {
    const double L = shapes[m];
    if (!(L > 1.0)) throw InvalidArgument("sample shape must exceed 1");
    // (0, x2, 1, L) scaled by s, with x2 = z L / (L - 1 + z)
    const double s = 0.8 + 0.45 * static_cast<double>(m);
    const double den = L - 1.0 + z;
    const double x21 = s * z * L / den;
    const double x32 = s * (L - 1.0) * (1.0 - z) / den;
    const Row r = operator_row(params.kappa(), params.h(), x21, x32, s * (L - 1.0), z);
    rows.push_back({r.c1 / r.c2, r.c0 / r.c2});
  }
  OdeCoefficients c;
  for (const auto& r : rows) {
    c.a1 += r[0];
    c.a0 += r[1];
  }
  c.a1 /= static_cast<double>(rows.size());
  c.a0 /= static_cast<double>(rows.size());
  const double scale = 1.0 + std::abs(c.a1) + std::abs(c.a0);
  for (const auto& r : rows) {
    c.residual = std::max({c.residual, std::abs(r[0] - c.a1) / scale, std::abs(r[1] - c.a0) / scale});
  }
  return c;
}

OdeReduction reduce_to_ode(const KappaParams& params, std::size_t grid_points,
                           std::span<const double> shapes) {
  if (grid_points < 2) throw InvalidArgument("ODE grid needs at least two points");
  OdeReduction red;
  red.params = params;
  red.z = cosine_grid(PureChannelTable::delta, 1.0 - PureChannelTable::delta, grid_points - 1);
  for (double z : red.z) {
    const auto c = ode_coefficients(params, z, shapes);
    if (!std::isfinite(c.a1) || !std::isfinite(c.a0)) {
      throw NumericalFailure("non-finite ODE coefficient");
    }
    red.a2.push_back(1.0);
    red.a1.push_back(c.a1);
    red.a0.push_back(c.a0);
    red.max_residual = std::max(red.max_residual, c.residual);
  }
  std::vector<double> t, p, q;
  for (int k = 0; k < 7; ++k) {
    const double zk = 0.02 * std::ldexp(1.0, -k);
    const auto c = ode_coefficients(params, zk, shapes);
    red.max_residual = std::max(red.max_residual, c.residual);
    t.push_back(zk);
    p.push_back(zk * c.a1);
    q.push_back(zk * zk * c.a0);
  }
  if (red.max_residual > 1e-8) {
    throw NumericalFailure("ODE extraction is inconsistent across sampled configurations");
  }
  red.p0 = extrapolate_to_zero(t, p);
  red.q0 = extrapolate_to_zero(t, q);
  // r^2 + (p0 - 1) r + q0 = 0
  const double b = red.p0 - 1.0;
  const double disc = b * b - 4.0 * red.q0;
  if (disc < 0.0) throw NumericalFailure("complex indicial exponents");
  const double root = std::sqrt(disc);
  red.exponents_at_zero = {0.5 * (-b - root), 0.5 * (-b + root)};
  return red;
}

PureChannelTable::PureChannelTable(const KappaParams& params, std::size_t intervals)
    : params_(params), reduction_(reduce_to_ode(params)) {
  if (!(params.kappa() < 8.0)) throw Unsupported("pure partition functions need 0 < kappa < 8");
  if (intervals < 8) throw InvalidArgument("too few ODE table intervals");
  const auto& red = reduction_;
  s_ = red.exponents_at_zero[1];

  std::vector<double> t, dp, dq;
  for (int k = 0; k < 7; ++k) {
    const double zk = 0.02 * std::ldexp(1.0, -k);
    const auto c = ode_coefficients(params_, zk);
    t.push_back(zk);
    dp.push_back((zk * c.a1 - red.p0) / zk);
    dq.push_back((zk * zk * c.a0 - red.q0) / zk);
  }
  p1_ = extrapolate_to_zero(t, dp);
  q1_ = extrapolate_to_zero(t, dq);
  const double r1 = s_ + 1.0;
  g1_ = -(s_ * p1_ + q1_) / (r1 * (r1 - 1.0) + red.p0 * r1 + red.q0);

  auto rhs = [this](const State& y, State& dy, double z) {
    const auto c = ode_coefficients(params_, z);
    dy[0] = y[1];
    dy[1] = -(c.a1 * y[1] + c.a0 * y[0]);
  };

  nodes_ = cosine_grid(delta, 1.0 - delta, intervals);
  nodes_.insert(nodes_.begin(), seed_point);
  values_.reserve(nodes_.size());
  State y = small_branch(seed_point);
  auto stepper = odeint::make_controlled(kAbsTol, kRelTol, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_times(stepper, rhs, y, nodes_.begin(), nodes_.end(), 1e-7,
                          [this](const State& v, double) { values_.push_back(v); });
  if (values_.size() != nodes_.size()) throw NumericalFailure("ODE table integration incomplete");
  for (const auto& v : values_) {
    if (!std::isfinite(v[0]) || !std::isfinite(v[1])) throw NumericalFailure("ODE table diverged");
  }

  // Abel: W[Hu, G](z) = norm * s * z^{s-1} * exp(-int_0^z (a1 - p0/t) dt).
  const auto g = small_branch(0.5);
  const double h = params_.h();
  const double wronskian = 2.0 * g[0] * g[1] - 8.0 * h * g[0] * g[0];
  const double p0 = red.p0;
  const double integral = boost::math::quadrature::gauss<double, 40>::integrate(
      [&](double z) { return ode_coefficients(params_, z).a1 - p0 / z; }, 0.0, 0.5);
  norm_ = wronskian / (s_ * std::pow(0.5, s_ - 1.0) * std::exp(-integral));
  if (!(norm_ > 0.0) || !std::isfinite(norm_)) throw NumericalFailure("pure branch normalization failed");

  // Local Frobenius forms beyond [delta, 1 - delta], fitted to the integrated
  // branch on its first few multiples of delta.
  integer_exponent_ = std::abs(s_ - std::round(s_)) < 1e-9;
  Eigen::Matrix4d m0;
  Eigen::Vector4d r0;
  for (int k = 0; k < 4; ++k) {
    const double z = delta * (1.0 + k);
    const double tail = integer_exponent_ ? std::pow(z, s_) * std::log(z) : std::pow(z, s_);
    m0.row(k) << 1.0, z, z * z, tail;
    r0(k) = unscaled_branch(z);
  }
  const Eigen::Vector4d c0 = m0.fullPivLu().solve(r0);
  Eigen::Matrix3d m1;
  Eigen::Vector3d rhs1;
  for (int k = 0; k < 3; ++k) {
    const double w = delta * (1.0 + k);
    m1.row(k) << 1.0, w, w * w;
    rhs1(k) = unscaled_branch(1.0 - w) / std::pow(w, 2.0 / params_.kappa());
  }
  const Eigen::Vector3d c1 = m1.fullPivLu().solve(rhs1);
  for (int k = 0; k < 4; ++k) near_zero_[k] = c0(k);
  for (int k = 0; k < 3; ++k) near_one_[k] = c1(k);
}

std::array<double, 2> PureChannelTable::small_branch(double z) const {
  if (!(z > 0.0)) throw NumericalFailure("cross ratio outside (0, 1)");
  if (z <= seed_point) {
    const double zs = std::pow(z, s_);
    return {zs * (1.0 + g1_ * z), zs * (s_ / z + g1_ * (s_ + 1.0))};
  }
  if (z > 1.0 - delta) throw NumericalFailure("small branch queried beyond the integrated range");
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), z);
  std::size_t k = static_cast<std::size_t>(it - nodes_.begin());
  if (k == nodes_.size() || (k > 0 && z - nodes_[k - 1] < nodes_[k] - z)) --k;
  State y = values_[k];
  if (nodes_[k] == z) return y;
  auto rhs = [this](const State& v, State& dv, double x) {
    const auto c = ode_coefficients(params_, x);
    dv[0] = v[1];
    dv[1] = -(c.a1 * v[1] + c.a0 * v[0]);
  };
  const double step = 0.25 * (z - nodes_[k]);
  odeint::integrate_adaptive(odeint::make_controlled(kAbsTol, kRelTol, odeint::runge_kutta_dopri5<State>()),
                             rhs, y, nodes_[k], z, step);
  return y;
}

double PureChannelTable::unscaled_branch(double z) const {
  const double h = params_.h();
  return std::pow(z / (1.0 - z), 2.0 * h) * small_branch(1.0 - z)[0];
}

double PureChannelTable::branch(double z) const {
  if (!(z > 0.0 && z < 1.0)) throw NumericalFailure("cross ratio outside (0, 1)");
  if (z < delta) {
    const double tail = integer_exponent_ ? std::pow(z, s_) * std::log(z) : std::pow(z, s_);
    return (near_zero_[0] + z * (near_zero_[1] + z * near_zero_[2]) + near_zero_[3] * tail) / norm_;
  }
  if (z > 1.0 - delta) {
    const double w = 1.0 - z;
    return std::pow(w, 2.0 / params_.kappa()) * (near_one_[0] + w * (near_one_[1] + w * near_one_[2])) /
           norm_;
  }
  return unscaled_branch(z) / norm_;
}

const PureChannelTable& pure_channel_table(const KappaParams& params) {
  static std::mutex mutex;
  static std::map<double, std::unique_ptr<const PureChannelTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[params.kappa()];
  if (!slot) slot = std::make_unique<const PureChannelTable>(params);
  return *slot;
}

double pure_Z(const KappaParams& params, const BoundaryConfig& x, const PlanarPairing& pairing) {
  if (x.size() != 4 || pairing.n_pairs() != 2) throw Unsupported("pure_Z is available for N = 2 only");
  if (!(params.kappa() < 8.0)) throw Unsupported("pure_Z needs 0 < kappa < 8");
  require_nondegenerate(x);
  const auto& table = pure_channel_table(params);
  const double z = cross_ratio(x).z;
  const double h = params.h();
  if (pairing == pairing_alpha1()) {
    return std::pow((x[1] - x[0]) * (x[3] - x[2]), -2.0 * h) * table.branch(z);
  }
  return std::pow((x[3] - x[0]) * (x[2] - x[1]), -2.0 * h) * table.branch(1.0 - z);
}

}  // namespace msle
