#include "multisle/prediction.hpp"

#include "multisle/error.hpp"
#include "multisle/ode_reduction.hpp"
#include "multisle/partition.hpp"

namespace msle {

double PairingPrediction::total() const {
  double s = 0.0;
  for (const auto& [pairing, p] : probabilities) s += p;
  return s;
}

PairingPrediction predict_pairing_probabilities(const KappaParams& params, const BoundaryConfig& config) {
  if (params.kappa() != 3.0 && params.kappa() != 4.0) {
    throw Unsupported("pairing predictions are available for kappa 3 and 4 only");
  }
  require_nondegenerate(config);
  PairingPrediction out;
  if (config.n_pairs() == 1) {
    out.probabilities.emplace(PlanarPairing({{1, 2}}), 1.0);
    return out;
  }
  if (config.n_pairs() != 2) throw Unsupported("pairing predictions for N >= 3 are not available");
  const double z_total = PartitionEvaluator::total(params.kappa())(config);
  for (const auto& alpha : {pairing_alpha1(), pairing_alpha2()}) {
    out.probabilities.emplace(alpha, pure_Z(params, config, alpha) / z_total);
  }
  return out;
}

}  // namespace msle
