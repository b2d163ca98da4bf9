#include "multisle/partition.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numeric>
#include <sstream>

#include "multisle/error.hpp"
#include "multisle/ode_reduction.hpp"
#include "multisle/pfaffian.hpp"

namespace msle {

double ising_Z(const BoundaryConfig& config) {
  require_nondegenerate(config);
  return pfaffian(cauchy_kernel(config));
}

double gff_Z(const BoundaryConfig& x) {
  require_nondegenerate(x);
  double log_z = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double e = (j - i) % 2 == 0 ? 0.5 : -0.5;
      log_z += e * std::log(x[j] - x[i]);
    }
  }
  return std::exp(log_z);
}

double ising_log_grad(const BoundaryConfig& x, std::size_t j) {
  require_nondegenerate(x);
  if (j >= x.size()) throw InvalidArgument("log_grad index out of range");
  const Eigen::MatrixXd inv = cauchy_kernel(x).partialPivLu().inverse();
  double g = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i == j) continue;
    const double d = x[j] - x[i];
    g += inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) / (d * d);
  }
  return g;
}

double gff_log_grad(const BoundaryConfig& x, std::size_t j) {
  require_nondegenerate(x);
  if (j >= x.size()) throw InvalidArgument("log_grad index out of range");
  double g = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i == j) continue;
    const std::size_t dist = i > j ? i - j : j - i;
    const double e = dist % 2 == 0 ? 0.5 : -0.5;
    g += e / (x[j] - x[i]);
  }
  return g;
}

std::string to_string(EvaluatorKind kind) {
  switch (kind) {
    case EvaluatorKind::IsingPfaffian: return "ising_pfaffian";
    case EvaluatorKind::GffProduct: return "gff_product";
    case EvaluatorKind::PureChannel: return "pure_channel";
    case EvaluatorKind::ConvexCombination: return "convex_combination";
    case EvaluatorKind::Custom: return "custom";
  }
  return "unknown";
}

namespace {

class IsingModel final : public detail::PartitionModel {
 public:
  EvaluatorKind kind() const override { return EvaluatorKind::IsingPfaffian; }
  const KappaParams& params() const override { return params_; }
  double value(const BoundaryConfig& x) const override { return ising_Z(x); }
  std::optional<double> analytic_log_grad(const BoundaryConfig& x, std::size_t j) const override {
    return ising_log_grad(x, j);
  }
  std::string describe() const override { return "ising"; }

 private:
  KappaParams params_{3.0};
};

class GffModel final : public detail::PartitionModel {
 public:
  EvaluatorKind kind() const override { return EvaluatorKind::GffProduct; }
  const KappaParams& params() const override { return params_; }
  double value(const BoundaryConfig& x) const override { return gff_Z(x); }
  std::optional<double> analytic_log_grad(const BoundaryConfig& x, std::size_t j) const override {
    return gff_log_grad(x, j);
  }
  std::string describe() const override { return "gff"; }

 private:
  KappaParams params_{4.0};
};

class PureModel final : public detail::PartitionModel {
 public:
  PureModel(const KappaParams& params, PlanarPairing pairing)
      : params_(params), pairing_(std::move(pairing)) {
    if (pairing_.n_pairs() != 2) throw Unsupported("pure partition functions need N = 2");
    pure_channel_table(params_);
  }
  EvaluatorKind kind() const override { return EvaluatorKind::PureChannel; }
  const KappaParams& params() const override { return params_; }
  double value(const BoundaryConfig& x) const override { return pure_Z(params_, x, pairing_); }
  std::string describe() const override { return "pure:" + pairing_.to_string(); }

 private:
  KappaParams params_;
  PlanarPairing pairing_;
};

class CustomModel final : public detail::PartitionModel {
 public:
  CustomModel(const KappaParams& params, std::string name,
              std::function<double(const BoundaryConfig&)> fn)
      : params_(params), name_(std::move(name)), fn_(std::move(fn)) {
    if (!fn_) throw InvalidArgument("custom partition function is empty");
  }
  EvaluatorKind kind() const override { return EvaluatorKind::Custom; }
  const KappaParams& params() const override { return params_; }
  double value(const BoundaryConfig& x) const override { return fn_(x); }
  std::string describe() const override { return name_; }

 private:
  KappaParams params_;
  std::string name_;
  std::function<double(const BoundaryConfig&)> fn_;
};

class CombinationModel final : public detail::PartitionModel {
 public:
  CombinationModel(std::vector<double> coefficients, std::vector<PartitionEvaluator> parts)
      : params_(parts.front().params()),
        coefficients_(std::move(coefficients)),
        parts_(std::move(parts)) {}
  EvaluatorKind kind() const override { return EvaluatorKind::ConvexCombination; }
  const KappaParams& params() const override { return params_; }
  double value(const BoundaryConfig& x) const override {
    double z = 0.0;
    for (std::size_t a = 0; a < parts_.size(); ++a) {
      if (coefficients_[a] != 0.0) z += coefficients_[a] * parts_[a](x);
    }
    return z;
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "combination(";
    for (std::size_t a = 0; a < parts_.size(); ++a) {
      os << (a ? "," : "") << parts_[a].describe();
    }
    os << ")";
    return os.str();
  }

 private:
  KappaParams params_;
  std::vector<double> coefficients_;
  std::vector<PartitionEvaluator> parts_;
};

double finite_step(const BoundaryConfig& x, std::size_t j, FiniteDifference fd) {
  if (!(fd.relative_step > 0.0 && fd.relative_step <= 0.25)) {
    throw InvalidArgument("finite-difference step must lie in (0, 0.25] of the local gap");
  }
  return fd.relative_step * x.local_gap(j);
}

BoundaryConfig shifted(const BoundaryConfig& x, std::size_t j, double delta) {
  try {
    return x.with_point(j, x[j] + delta);
  } catch (const OrderBroken&) {
    throw InvalidArgument("finite-difference stencil leaves the ordered chamber");
  }
}

}  // namespace

PartitionEvaluator::PartitionEvaluator(std::shared_ptr<const detail::PartitionModel> model)
    : model_(std::move(model)) {
  if (!model_) throw InvalidArgument("null partition model");
}

PartitionEvaluator PartitionEvaluator::ising() {
  static const auto model = std::make_shared<const IsingModel>();
  return PartitionEvaluator(model);
}

PartitionEvaluator PartitionEvaluator::gff() {
  static const auto model = std::make_shared<const GffModel>();
  return PartitionEvaluator(model);
}

PartitionEvaluator PartitionEvaluator::pure_channel(const KappaParams& params,
                                                    const PlanarPairing& pairing) {
  return PartitionEvaluator(std::make_shared<const PureModel>(params, pairing));
}

PartitionEvaluator PartitionEvaluator::custom(const KappaParams& params, std::string name,
                                              std::function<double(const BoundaryConfig&)> fn) {
  return PartitionEvaluator(std::make_shared<const CustomModel>(params, std::move(name), std::move(fn)));
}

PartitionEvaluator PartitionEvaluator::total(double kappa) {
  if (kappa == 3.0) return ising();
  if (kappa == 4.0) return gff();
  throw Unsupported("total partition function is available for kappa 3 and 4 only");
}

double PartitionEvaluator::operator()(const BoundaryConfig& config) const {
  require_nondegenerate(config);
  return model_->value(config);
}

std::optional<double> PartitionEvaluator::analytic_log_grad(const BoundaryConfig& config,
                                                            std::size_t j) const {
  return model_->analytic_log_grad(config, j);
}

double log_grad(const PartitionEvaluator& z, const BoundaryConfig& config, std::size_t j) {
  if (j >= config.size()) throw InvalidArgument("log_grad index out of range");
  if (auto g = z.analytic_log_grad(config, j)) return *g;
  return log_grad_fd(z, config, j);
}

double log_grad_fd(const PartitionEvaluator& z, const BoundaryConfig& x, std::size_t j,
                   FiniteDifference fd) {
  if (j >= x.size()) throw InvalidArgument("log_grad index out of range");
  const double h = finite_step(x, j, fd);
  auto central = [&](double step) {
    return (std::log(z(shifted(x, j, step))) - std::log(z(shifted(x, j, -step)))) / (2.0 * step);
  };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

PdeTerms pde_terms(const PartitionEvaluator& z, const BoundaryConfig& x, std::size_t j,
                   FiniteDifference fd) {
  if (j >= x.size()) throw InvalidArgument("pde index out of range");
  const double kappa = z.params().kappa();
  const double h = z.params().h();
  const double z0 = z(x);

  const bool analytic = fd.use_analytic_gradient && z.analytic_log_grad(x, j).has_value();
  auto first = [&](std::size_t i) {
    if (analytic) return z0 * *z.analytic_log_grad(x, i);
    const double s = finite_step(x, i, fd);
    auto central = [&](double step) {
      return (z(shifted(x, i, step)) - z(shifted(x, i, -step))) / (2.0 * step);
    };
    return (4.0 * central(0.5 * s) - central(s)) / 3.0;
  };
  auto second = [&](std::size_t i) {
    const double s = finite_step(x, i, fd);
    if (analytic) {
      // d^2 Z = Z (g^2 + dg) with g the log-gradient
      auto slope = [&](double step) {
        return (*z.analytic_log_grad(shifted(x, i, step), i) - *z.analytic_log_grad(shifted(x, i, -step), i)) /
               (2.0 * step);
      };
      const double g = *z.analytic_log_grad(x, i);
      return z0 * (g * g + (4.0 * slope(0.5 * s) - slope(s)) / 3.0);
    }
    auto central = [&](double step) {
      return (z(shifted(x, i, step)) - 2.0 * z0 + z(shifted(x, i, -step))) / (step * step);
    };
    return (4.0 * central(0.5 * s) - central(s)) / 3.0;
  };

  PdeTerms out;
  out.terms.push_back(0.5 * kappa * second(j));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i == j) continue;
    const double d = x[i] - x[j];
    out.terms.push_back(2.0 / d * first(i));
    out.terms.push_back(-2.0 * h / (d * d) * z0);
  }
  for (double t : out.terms) {
    out.sum += t;
    out.scale = std::max(out.scale, std::abs(t));
  }
  return out;
}

double pde_residual(const PartitionEvaluator& z, const BoundaryConfig& config, std::size_t j,
                    FiniteDifference fd) {
  const auto t = pde_terms(z, config, j, fd);
  if (t.scale == 0.0) return 0.0;
  return std::abs(t.sum) / t.scale;
}

double covariance_defect(const PartitionEvaluator& z, const BoundaryConfig& config,
                         const MoebiusTransform& map) {
  const auto image = apply_moebius(map, config);
  const double h = z.params().h();
  double factor = 1.0;
  for (double d : image.derivatives) factor *= std::pow(d, h);
  const double z0 = z(config);
  return std::abs(z0 - factor * z(image.config)) / z0;
}

PartitionEvaluator convex_combine(const std::vector<double>& weights,
                                  const std::vector<PartitionEvaluator>& evaluators,
                                  const BoundaryConfig& anchor, double anchor_value) {
  if (weights.empty() || weights.size() != evaluators.size()) {
    throw InvalidArgument("convex_combine needs one weight per evaluator");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("convex weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("convex weights must sum to 1");
  if (!(anchor_value > 0.0)) throw InvalidArgument("anchor value must be positive");
  const auto& params = evaluators.front().params();
  std::vector<double> coefficients(weights.size());
  for (std::size_t a = 0; a < weights.size(); ++a) {
    if (!(evaluators[a].params() == params)) throw InvalidArgument("convex_combine: mismatched kappa");
    coefficients[a] = weights[a] == 0.0 ? 0.0 : anchor_value * weights[a] / evaluators[a](anchor);
  }
  return PartitionEvaluator(
      std::make_shared<const CombinationModel>(std::move(coefficients), evaluators));
}

}  // namespace msle
