#include "multisle/hoermander.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>

#include "multisle/error.hpp"

namespace msle {

ExtVector directional_derivative(const VectorField& f, const ExtVector& x, const ExtVector& v,
                                 long double step) {
  const long double norm = v.norm();
  if (norm == 0.0L) return ExtVector::Zero(f(x).size());
  if (!(step > 0.0L)) throw NumericalFailure("finite-difference step underflow");
  const ExtVector u = v / norm;
  auto central = [&](long double h) -> ExtVector { return (f(x + h * u) - f(x - h * u)) / (2.0L * h); };
  const ExtVector d1 = central(step);
  const ExtVector d2 = central(0.5L * step);
  const ExtVector d4 = central(0.25L * step);
  const ExtVector r1 = (4.0L * d2 - d1) / 3.0L;
  const ExtVector r2 = (4.0L * d4 - d2) / 3.0L;
  return norm * (16.0L * r2 - r1) / 15.0L;
}

ExtVector lie_bracket(const VectorField& x_field, const VectorField& y_field, const ExtVector& x,
                      long double step) {
  return directional_derivative(y_field, x, x_field(x), step) -
         directional_derivative(x_field, x, y_field(x), step);
}

BracketSystem::BracketSystem(const BoundaryConfig& config, double kappa, std::size_t j)
    : config_(config), kappa_(kappa), j_(j) {
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  if (j >= config.size()) throw InvalidArgument("launch index out of range");
  require_nondegenerate(config);
}

VectorField BracketSystem::a1() const {
  const long double amp = std::sqrt(static_cast<long double>(kappa_));
  const std::size_t j = j_;
  return [amp, j](const ExtVector& x) {
    ExtVector out = ExtVector::Zero(x.size());
    out(static_cast<Eigen::Index>(j)) = amp;
    return out;
  };
}

VectorField BracketSystem::a0() const {
  const auto j = static_cast<Eigen::Index>(j_);
  return [j](const ExtVector& x) {
    ExtVector out = ExtVector::Zero(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (i != j) out(i) = 2.0L / (x(i) - x(j));
    }
    return out;
  };
}

VectorField BracketSystem::numeric_field(int k, double relative_step) const {
  if (k < 0) throw InvalidArgument("bracket order must be nonnegative");
  if (k == 0) return a0();
  const long double step = static_cast<long double>(relative_step) * config_.min_gap();
  if (!(step > 0.0L)) throw NumericalFailure("finite-difference step underflow");
  VectorField inner = numeric_field(k - 1, relative_step);
  VectorField outer = a1();
  return [inner, outer, step](const ExtVector& x) { return lie_bracket(outer, inner, x, step); };
}

Eigen::VectorXd closed_form_bracket(const BoundaryConfig& config, int k, std::size_t j) {
  if (k < 1) throw InvalidArgument("bracket order must be at least 1");
  if (j >= config.size()) throw InvalidArgument("launch index out of range");
  require_nondegenerate(config);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(config.size()));
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (i != j) g(static_cast<Eigen::Index>(i)) = 2.0 / std::pow(config[i] - config[j], k + 1);
  }
  return g;
}

double bracket_constant(double kappa, int k) {
  return std::pow(kappa, 0.5 * k) * std::tgamma(k + 1.0);
}

Eigen::VectorXd numeric_bracket(const BoundaryConfig& config, int k, BracketOptions options) {
  if (k < 1) throw InvalidArgument("bracket order must be at least 1");
  const BracketSystem sys(config, options.kappa, options.j);
  const ExtVector x = Eigen::Map<const Eigen::VectorXd>(config.points().data(),
                                                       static_cast<Eigen::Index>(config.size()))
                          .cast<long double>();
  return sys.numeric_field(k, options.relative_step)(x).cast<double>();
}

double parallelism(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

HoermanderResult hoermander_rank(const BoundaryConfig& config, double kappa, std::size_t j) {
  const BracketSystem sys(config, kappa, j);
  const auto n = static_cast<Eigen::Index>(config.size());
  Eigen::MatrixXd m(n, n);
  const ExtVector x = Eigen::Map<const Eigen::VectorXd>(config.points().data(), n).cast<long double>();
  m.col(0) = sys.a1()(x).cast<double>();
  for (int k = 1; k < n; ++k) m.col(k) = bracket_constant(kappa, k) * closed_form_bracket(config, k, j);
  for (Eigen::Index c = 0; c < n; ++c) {
    const double s = m.col(c).cwiseAbs().maxCoeff();
    if (s > 0.0) m.col(c) /= s;
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    const double s = m.row(r).cwiseAbs().maxCoeff();
    if (s > 0.0) m.row(r) /= s;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();
  HoermanderResult res;
  res.singular_values.assign(sv.data(), sv.data() + sv.size());
  res.smallest_singular_value = sv(sv.size() - 1);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10 * sv(0)) ++res.rank;
  }

  // M_{k,i} = 2 / (x_i - x_j)^{k+1}, k = 1..2N-1, i != j.
  const Eigen::Index d = n - 1;
  if (d > 0) {
    std::vector<double> t;
    for (std::size_t i = 0; i < config.size(); ++i) {
      if (i != j) t.push_back(1.0 / (config[i] - config[j]));
    }
    Eigen::MatrixXd vm(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
      for (Eigen::Index i = 0; i < d; ++i) vm(k, i) = 2.0 * std::pow(t[static_cast<std::size_t>(i)], k + 2);
    }
    res.vandermonde_det_lu = vm.partialPivLu().determinant();
    double det = 1.0;
    for (std::size_t a = 0; a < t.size(); ++a) {
      det *= 2.0 * t[a] * t[a];
      for (std::size_t b = a + 1; b < t.size(); ++b) det *= t[b] - t[a];
    }
    res.vandermonde_det_formula = det;
    res.vandermonde_nonzero = det != 0.0;
  }
  return res;
}

}  // namespace msle
