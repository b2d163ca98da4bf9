#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "multisle/geometry.hpp"
#include "multisle/pairing.hpp"

namespace msle {

/// Pf(1 / (x_j - x_i)); the kappa = 3 total partition function.
double ising_Z(const BoundaryConfig& config);
/// prod_{i<j} (x_j - x_i)^{(-1)^{j-i} / 2}; the kappa = 4 total partition function.
double gff_Z(const BoundaryConfig& config);

/// d/dx_j log ising_Z, from the inverse kernel matrix. j is 0-based.
double ising_log_grad(const BoundaryConfig& config, std::size_t j);
/// d/dx_j log gff_Z. j is 0-based.
double gff_log_grad(const BoundaryConfig& config, std::size_t j);

enum class EvaluatorKind { IsingPfaffian, GffProduct, PureChannel, ConvexCombination, Custom };

std::string to_string(EvaluatorKind kind);

namespace detail {

class PartitionModel {
 public:
  virtual ~PartitionModel() = default;
  virtual EvaluatorKind kind() const = 0;
  virtual const KappaParams& params() const = 0;
  virtual double value(const BoundaryConfig& config) const = 0;
  virtual std::optional<double> analytic_log_grad(const BoundaryConfig&, std::size_t) const {
    return std::nullopt;
  }
  virtual std::string describe() const = 0;
};

}  // namespace detail

/// Immutable handle to a partition function together with its kappa.
class PartitionEvaluator {
 public:
  static PartitionEvaluator ising();
  static PartitionEvaluator gff();
  /// Pure partition function of an N = 2 pairing; 0 < kappa < 8.
  static PartitionEvaluator pure_channel(const KappaParams& params, const PlanarPairing& pairing);
  static PartitionEvaluator custom(const KappaParams& params, std::string name,
                                   std::function<double(const BoundaryConfig&)> fn);
  /// The total partition function for kappa 3 or 4.
  static PartitionEvaluator total(double kappa);

  explicit PartitionEvaluator(std::shared_ptr<const detail::PartitionModel> model);

  EvaluatorKind kind() const { return model_->kind(); }
  const KappaParams& params() const { return model_->params(); }
  std::string describe() const { return model_->describe(); }

  /// Z(config); validates the configuration first.
  double operator()(const BoundaryConfig& config) const;
  double value(const BoundaryConfig& config) const { return (*this)(config); }

  /// Analytic d/dx_j log Z when the model provides one.
  std::optional<double> analytic_log_grad(const BoundaryConfig& config, std::size_t j) const;

 private:
  std::shared_ptr<const detail::PartitionModel> model_;
};

struct FiniteDifference {
  /// Step as a fraction of the local gap around the differentiated point.
  double relative_step = 1e-4;
  /// In pde_terms, take first derivatives from an analytic log-gradient when
  /// the evaluator has one and difference only that gradient.
  bool use_analytic_gradient = true;
};

/// d/dx_j log Z: analytic when available, else finite differences.
double log_grad(const PartitionEvaluator& z, const BoundaryConfig& config, std::size_t j);

/// Central differences of log Z with one Richardson level.
double log_grad_fd(const PartitionEvaluator& z, const BoundaryConfig& config, std::size_t j,
                   FiniteDifference fd = {});

/// The individual terms of the j-th second-order operator applied to Z.
struct PdeTerms {
  std::vector<double> terms;
  double sum = 0.0;
  double scale = 0.0;
};

PdeTerms pde_terms(const PartitionEvaluator& z, const BoundaryConfig& config, std::size_t j,
                   FiniteDifference fd = {});

/// |sum of terms| / max |term| for
/// (kappa/2) d_j^2 Z + sum_{i != j} [2/(x_i - x_j) d_i Z - 2h/(x_i - x_j)^2 Z].
double pde_residual(const PartitionEvaluator& z, const BoundaryConfig& config, std::size_t j,
                    FiniteDifference fd = {});

/// |Z(x) - prod phi'(x_i)^h Z(phi(x))| / Z(x).
double covariance_defect(const PartitionEvaluator& z, const BoundaryConfig& config,
                         const MoebiusTransform& map);

/// Z(x) = anchor_value * sum_a w_a Z_a(x) / Z_a(anchor). With w_a the
/// predicted pairing probabilities at the anchor and anchor_value the total Z
/// there, this reproduces the total Z.
PartitionEvaluator convex_combine(const std::vector<double>& weights,
                                  const std::vector<PartitionEvaluator>& evaluators,
                                  const BoundaryConfig& anchor, double anchor_value = 1.0);

}  // namespace msle
