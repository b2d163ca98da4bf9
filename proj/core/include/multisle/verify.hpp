#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace msle {

/// Outcome of one numerical check: the worst value seen over all cases
/// against a bound. `upper` checks worst < tolerance, otherwise worst >
/// tolerance (negative controls).
struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;
  double tolerance = 0.0;
  bool upper = true;
  std::size_t cases = 0;
};

/// PDE residuals of the Ising (kappa 3) and GFF (kappa 4) partition
/// functions on random configurations, plus a perturbed negative control.
std::vector<CheckResult> verify_pde(std::size_t configs, std::uint64_t seed, const std::vector<int>& n_pairs = {1, 2, 3});

/// Moebius covariance defect of both closed forms under random
/// order-preserving maps.
std::vector<CheckResult> verify_covariance(std::size_t maps, std::size_t configs, std::uint64_t seed,
                                           const std::vector<int>& n_pairs = {1, 2, 3});

/// |Z_1 + Z_2 - Z| / Z over z = 0.05, 0.10, ..., 0.95 for kappa 3 and 4.
std::vector<CheckResult> verify_sumrule();

bool all_passed(const std::vector<CheckResult>& results);
std::string to_json(const std::vector<CheckResult>& results);

}  // namespace msle
