#include "multisle/verify.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "multisle/geometry.hpp"
#include "multisle/ode_reduction.hpp"
#include "multisle/partition.hpp"
#include "multisle/random.hpp"

namespace msle {

namespace {

CheckResult finish(std::string name, double worst, double tol, bool upper, std::size_t cases) {
  return {std::move(name), upper ? worst < tol : worst > tol, worst, tol, upper, cases};
}

}  // namespace

std::vector<CheckResult> verify_pde(std::size_t configs, std::uint64_t seed, const std::vector<int>& n_pairs) {
  const auto ising = PartitionEvaluator::ising();
  const auto gff = PartitionEvaluator::gff();
  const auto perturbed = PartitionEvaluator::custom(KappaParams(3.0), "perturbed ising", [](const BoundaryConfig& x) {
    return ising_Z(x) * (1.0 + 0.01 * x[0]);
  });
  std::vector<CheckResult> out;
  std::uint64_t stream = 0;
  for (const auto& [name, z, upper] : {std::tuple{"pde ising kappa=3", ising, true},
                                       std::tuple{"pde gff kappa=4", gff, true},
                                       std::tuple{"pde negative control", perturbed, false}}) {
    double worst = upper ? 0.0 : INFINITY;
    std::size_t cases = 0;
    for (const int n : n_pairs) {
      Rng rng(derive_seed(seed, stream++));
      for (std::size_t c = 0; c < configs; ++c) {
        const auto x = random_config(static_cast<std::size_t>(n), rng);
        if (upper) {
          for (std::size_t j = 0; j < x.size(); ++j, ++cases) worst = std::max(worst, pde_residual(z, x, j));
        } else {
          // a perturbation is caught if some coordinate's equation fails
          double best = 0.0;
          for (std::size_t j = 0; j < x.size(); ++j) best = std::max(best, pde_residual(z, x, j));
          worst = std::min(worst, best);
          ++cases;
        }
      }
    }
    out.push_back(finish(name, worst, upper ? 1e-6 : 1e-3, upper, cases));
  }
  return out;
}

std::vector<CheckResult> verify_covariance(std::size_t maps, std::size_t configs, std::uint64_t seed,
                                           const std::vector<int>& n_pairs) {
  std::vector<CheckResult> out;
  std::uint64_t stream = 100;
  for (const auto& [name, z] : {std::pair{"covariance ising", PartitionEvaluator::ising()},
                                std::pair{"covariance gff", PartitionEvaluator::gff()}}) {
    double worst = 0.0;
    std::size_t cases = 0;
    for (const int n : n_pairs) {
      Rng rng(derive_seed(seed, stream++));
      for (std::size_t c = 0; c < configs; ++c) {
        const auto x = random_config(static_cast<std::size_t>(n), rng);
        for (std::size_t m = 0; m < maps; ++m, ++cases) {
          worst = std::max(worst, covariance_defect(z, x, random_order_preserving_map(x, rng)));
        }
      }
    }
    out.push_back(finish(name, worst, 1e-9, true, cases));
  }
  return out;
}

std::vector<CheckResult> verify_sumrule() {
  std::vector<CheckResult> out;
  for (const double kappa : {3.0, 4.0}) {
    const KappaParams params(kappa);
    const auto total = PartitionEvaluator::total(kappa);
    double worst = 0.0;
    std::size_t cases = 0;
    for (int k = 1; k <= 19; ++k, ++cases) {
      const auto x = config_with_cross_ratio(0.05 * k);
      const double zt = total(x);
      const double s = pure_Z(params, x, pairing_alpha1()) + pure_Z(params, x, pairing_alpha2());
      worst = std::max(worst, std::abs(s - zt) / zt);
    }
    out.push_back(finish(kappa == 3.0 ? "sum rule kappa=3" : "sum rule kappa=4", worst, 1e-5, true, cases));
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

std::string to_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    arr.push_back({{"name", r.name},
                   {"passed", r.passed},
                   {"worst", r.worst},
                   {"bound", std::string(r.upper ? "<" : ">")},
                   {"tolerance", r.tolerance},
                   {"cases", r.cases}});
  }
  return nlohmann::json{{"checks", arr}, {"passed", all_passed(results)}}.dump(2) + "\n";
}

}  // namespace msle
