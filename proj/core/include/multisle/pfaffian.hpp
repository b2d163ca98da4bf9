#pragma once

#include <Eigen/Core>

#include "multisle/geometry.hpp"

namespace msle {

/// Pfaffian of a real skew-symmetric matrix by Parlett–Reid elimination with
/// partial pivoting, O(n^3). Odd sizes give 0.
double pfaffian(Eigen::MatrixXd a);

/// Skew matrix with entries 1 / (x_j - x_i) off the diagonal.
Eigen::MatrixXd cauchy_kernel(const BoundaryConfig& config);

}  // namespace msle
