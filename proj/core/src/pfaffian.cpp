#include "multisle/pfaffian.hpp"

#include "multisle/error.hpp"

namespace msle {

double pfaffian(Eigen::MatrixXd a) {
  if (a.rows() != a.cols()) throw InvalidArgument("pfaffian needs a square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return 1.0;
  if (n % 2 == 1) return 0.0;
  double pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index piv = 0;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&piv);
    piv += k + 1;
    if (piv != k + 1) {
      a.row(k + 1).swap(a.row(piv));
      a.col(k + 1).swap(a.col(piv));
      pf = -pf;
    }
    const double pivot = a(k, k + 1);
    if (pivot == 0.0) return 0.0;
    pf *= pivot;
    const Eigen::Index rest = n - k - 2;
    if (rest > 0) {
      const Eigen::VectorXd tau = a.row(k).tail(rest).transpose() / pivot;
      const Eigen::VectorXd col = a.col(k + 1).tail(rest);
      a.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

Eigen::MatrixXd cauchy_kernel(const BoundaryConfig& x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = 1.0 / (x[j] - x[i]);
      a(i, j) = v;
      a(j, i) = -v;
    }
  }
  return a;
}

}  // namespace msle
