#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>
#include <vector>

#include "multisle/geometry.hpp"

namespace msle {

/// Brackets are nested finite differences; they run in extended precision
/// so that fifth-order nesting keeps enough digits.
using ExtVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using VectorField = std::function<ExtVector(const ExtVector&)>;

/// Directional derivative dF(x) v by central differences along v with two
/// Richardson levels; `step` is the absolute displacement in x.
ExtVector directional_derivative(const VectorField& f, const ExtVector& x, const ExtVector& v,
                                 long double step);

/// [X, Y](x) = DY(x) X(x) - DX(x) Y(x).
ExtVector lie_bracket(const VectorField& x_field, const VectorField& y_field, const ExtVector& x,
                      long double step);

/// The two fields of the launch-point SDE with the cutoff equal to 1:
/// A1 = sqrt(kappa) e_j and A0 = sum_{i != j} 2 / (x_i - x_j) e_i.
class BracketSystem {
 public:
  BracketSystem(const BoundaryConfig& config, double kappa, std::size_t j = 0);

  const BoundaryConfig& config() const noexcept { return config_; }
  double kappa() const noexcept { return kappa_; }
  std::size_t j() const noexcept { return j_; }

  VectorField a1() const;
  VectorField a0() const;
  /// G_k = [A1, G_{k-1}], G_0 = A0, as a finite-difference vector field.
  VectorField numeric_field(int k, double relative_step) const;

 private:
  BoundaryConfig config_;
  double kappa_;
  std::size_t j_;
};

/// Components 2 / (x_i - x_j)^{k+1}, zero in slot j. G_k equals this times
/// bracket_constant(kappa, k).
Eigen::VectorXd closed_form_bracket(const BoundaryConfig& config, int k, std::size_t j = 0);

/// C_k = kappa^{k/2} k!.
double bracket_constant(double kappa, int k);

struct BracketOptions {
  double kappa = 3.0;
  std::size_t j = 0;
  /// Finite-difference step per nesting level, relative to the minimum gap.
  double relative_step = 1e-1;
};

Eigen::VectorXd numeric_bracket(const BoundaryConfig& config, int k, BracketOptions options = {});

/// Cosine of the angle between two vectors.
double parallelism(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct HoermanderResult {
  int rank = 0;
  std::vector<double> singular_values;
  double smallest_singular_value = 0.0;
  /// det M by LU and by the product formula prod 2 t_i^2 prod (t_j - t_i),
  /// t_i = 1 / (x_i - x_j).
  double vandermonde_det_lu = 0.0;
  double vandermonde_det_formula = 0.0;
  bool vandermonde_nonzero = false;
};

/// Rank of {A1, G_1, ..., G_{2N-1}} by SVD after row and column
/// equilibration, threshold 1e-10 times the largest singular value.
HoermanderResult hoermander_rank(const BoundaryConfig& config, double kappa = 3.0, std::size_t j = 0);

}  // namespace msle
