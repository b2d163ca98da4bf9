#pragma once

#include <map>

#include "multisle/geometry.hpp"
#include "multisle/pairing.hpp"

namespace msle {

/// Pairing probabilities p_a = Z_a / Z.
struct PairingPrediction {
  std::map<PlanarPairing, double> probabilities;

  double at(const PlanarPairing& pairing) const { return probabilities.at(pairing); }
  double total() const;
};

/// kappa in {3, 4}; N = 1 or N = 2. Throws Unsupported otherwise.
PairingPrediction predict_pairing_probabilities(const KappaParams& params, const BoundaryConfig& config);

}  // namespace msle
