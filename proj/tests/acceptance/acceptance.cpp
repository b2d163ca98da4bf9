#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "multisle/elliptic.hpp"
#include "multisle/experiment.hpp"
#include "multisle/explorer.hpp"
#include "multisle/geometry.hpp"
#include "multisle/hoermander.hpp"
#include "multisle/ising.hpp"
#include "multisle/loewner.hpp"
#include "multisle/partition.hpp"
#include "multisle/prediction.hpp"
#include "multisle/verify.hpp"
#include "oracles.hpp"

using namespace msle;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

std::string worst_of(const std::vector<CheckResult>& checks) {
  std::string out;
  for (const auto& c : checks) {
    if (!out.empty()) out += "; ";
    out += c.name + " worst " + num(c.worst) + (c.upper ? " < " : " > ") + num(c.tolerance);
  }
  return out;
}

Verdict pde() {
  const auto checks = verify_pde(100, 101, {1, 2, 3});
  return {all_passed(checks), worst_of(checks)};
}

Verdict covariance() {
  const auto checks = verify_covariance(100, 20, 102, {1, 2, 3});
  return {all_passed(checks), worst_of(checks)};
}

Verdict pfaffian() {
  Rng rng(103);
  double worst = 0.0;
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 100; ++trial, ++cases) {
      const auto c = random_config(n, rng);
      const double want = oracle::signed_pairing_sum(c);
      worst = std::max(worst, std::abs(ising_Z(c) - want) / std::abs(want));
    }
  }
  return {worst < 1e-10, "max relative error " + num(worst) + " over " + std::to_string(cases) + " configs"};
}

Verdict sum_rule() {
  double worst = 0.0;
  for (double kappa : {3.0, 4.0}) {
    const KappaParams params(kappa);
    const auto total = PartitionEvaluator::total(kappa);
    const auto z1 = PartitionEvaluator::pure_channel(params, pairing_alpha1());
    const auto z2 = PartitionEvaluator::pure_channel(params, pairing_alpha2());
    for (int k = 1; k <= 19; ++k) {
      const auto c = config_with_cross_ratio(0.05 * k);
      const double z = total(c);
      worst = std::max(worst, std::abs(z1(c) + z2(c) - z) / z);
    }
  }
  return {worst < 1e-5, "max |Z1 + Z2 - Z| / Z = " + num(worst)};
}

struct RowCheck {
  bool pass = true;
  std::string detail;
};

RowCheck rows(const Report& r, const std::function<bool(const ComparisonRow&)>& ok,
              const std::function<std::string(const ComparisonRow&)>& show) {
  RowCheck out;
  if (r.comparison.empty()) return {false, "no comparison rows"};
  for (const auto& row : r.comparison) {
    out.pass = out.pass && ok(row);
    out.detail += " " + row.pairing.to_string() + ": " + show(row);
  }
  return out;
}

ExperimentSpec ising_rectangle(int width, int height) {
  ExperimentSpec s;
  s.model = "ising";
  s.width = width;
  s.height = height;
  s.samples = 100000;
  s.stride = 50;
  s.burn_in = 5000;
  s.chains = 1;
  s.seed = 2024;
  return s;
}

ExperimentSpec explorer_rectangle(double width, double height) {
  ExperimentSpec s;
  s.model = "explorer";
  s.width = width;
  s.height = height;
  s.samples = 100000;
  s.sampler = HittingSampler::Walk;
  s.seed = 2025;
  return s;
}

const Report& ising_square() {
  static const Report r = run_experiment(ising_rectangle(64, 64));
  return r;
}

std::string z_show(const ComparisonRow& row) {
  return "freq " + num(row.frequency) + " vs " + num(row.predicted) + ", z " + num(row.z);
}

std::string err_show(const ComparisonRow& row) {
  return "freq " + num(row.frequency) + " vs " + num(row.predicted) + ", |err| " + num(row.abs_error);
}

Verdict symmetry() {
  bool pass = true;
  std::string detail;
  for (double kappa : {3.0, 4.0}) {
    const auto p = predict_pairing_probabilities(KappaParams(kappa), config_with_cross_ratio(0.5));
    const double dev = std::abs(p.at(pairing_alpha1()) - 0.5);
    pass = pass && dev < 1e-6;
    detail += "kappa " + num(kappa) + " |p - 1/2| " + num(dev) + ";";
  }
  const auto z_ok = [](const ComparisonRow& row) { return std::abs(row.z) < 4.0; };
  const auto ising = rows(ising_square(), z_ok, z_show);
  // side 41.6 has the face count of the aspect-2 explorer domain
  const auto explorer = rows(run_experiment(explorer_rectangle(41.6, 41.6)), z_ok, z_show);
  detail += " ising 64x64" + ising.detail + "; explorer 41.6x41.6" + explorer.detail;
  return {pass && ising.pass && explorer.pass, detail};
}

Verdict ising_desk_scale() {
  const auto ok = [](const ComparisonRow& row) { return row.abs_error < 0.03; };
  const auto square = rows(ising_square(), ok, err_show);
  const auto tall = rows(run_experiment(ising_rectangle(64, 128)), ok, err_show);
  return {square.pass && tall.pass, "64x64" + square.detail + "; 64x128" + tall.detail};
}

Verdict explorer_desk_scale() {
  const auto domain = HexDomain::rectangle(29.4, 58.8);
  const auto ok = [](const ComparisonRow& row) { return row.abs_error < 0.03; };
  const auto r = rows(run_experiment(explorer_rectangle(29.4, 58.8)), ok, err_show);
  return {r.pass, std::to_string(domain.face_count()) + " faces;" + r.detail};
}

Verdict sampler_oracle() {
  bool pass = true;
  std::string detail;
  for (int side : {2, 4}) {
    const auto domain = FaceDomain::rectangle(side, side, FaceDomain::corner_marks(side, side));
    const auto bc = alternating_boundary_conditions(domain);
    const auto exact = exact_pairing_distribution(domain, bc, IsingParams{});
    const auto brute = oracle::enumerate_pairing_law(domain, critical_beta());
    double agreement = 0.0;
    for (const auto& [p, w] : brute) agreement = std::max(agreement, std::abs(exact.at(p) - w));
    SamplingPlan plan;
    plan.samples = 100000;
    plan.stride = 10;
    plan.burn_in = 1000;
    const auto samples = sample_pairings(domain, bc, IsingParams{}, plan, 300 + side);
    std::map<PlanarPairing, double> freq;
    for (const auto& s : samples) freq[s.pairing] += 1.0 / static_cast<double>(samples.size());
    std::set<PlanarPairing> keys;
    for (const auto& [p, w] : exact) keys.insert(p);
    for (const auto& [p, w] : freq) keys.insert(p);
    double tv = 0.0;
    for (const auto& p : keys) {
      const double a = exact.count(p) ? exact.at(p) : 0.0;
      const double b = freq.count(p) ? freq.at(p) : 0.0;
      tv += 0.5 * std::abs(a - b);
    }
    pass = pass && tv < 0.01 && agreement < 1e-12;
    detail += " " + std::to_string(side) + "x" + std::to_string(side) + " TV " + num(tv) +
              " (exact vs brute force " + num(agreement) + ");";
  }
  return {pass, detail};
}

Verdict martingale() {
  bool pass = true;
  std::string detail;
  const BoundaryConfig config({0, 1, 2, 3});
  const auto loc = Localization::around(0, 0.4);
  for (double kappa : {3.0, 4.0}) {
    const auto r = martingale_diagnostic(PartitionEvaluator::pure_channel(KappaParams(kappa), pairing_alpha1()),
                                         PartitionEvaluator::total(kappa), config, loc, 1e-4, 10000, 400);
    pass = pass && r.deviation < 3.0 * r.std_error;
    detail += " kappa " + num(kappa) + ": |mean - M0| " + num(r.deviation) + " vs 3 SE " + num(3.0 * r.std_error) + ";";
  }
  for (double kappa : {3.0, 4.0}) {
    const auto z = PartitionEvaluator::total(kappa);
    const auto r = martingale_diagnostic(z, z, config, loc, 1e-4, 10000, 401);
    pass = pass && r.deviation == 0.0;
    detail += " identical kappa " + num(kappa) + ": " + num(r.deviation) + ";";
  }
  return {pass, detail};
}

Verdict gap_law() {
  double worst = 0.0;
  for (double kappa : {2.0, 3.0, 4.0, 6.0}) {
    const KappaParams params(kappa);
    const auto z = PartitionEvaluator::custom(params, "two-point", [h = params.h()](const BoundaryConfig& x) {
      return std::pow(x[1] - x[0], -2.0 * h);
    });
    NoiseSource noise(0, NoiseMode::Zero);
    const double gap0 = 1.0;
    const auto rec = simulate(BoundaryConfig({0, gap0}), Localization::around(0, 0.4), z, 1e-5, noise);
    if (rec.steps() == 0) return {false, "no steps taken at kappa " + num(kappa)};
    for (std::size_t k = 0; k < rec.times.size(); ++k) {
      const double gap = rec.V[k][1] - rec.W[k];
      worst = std::max(worst, std::abs(gap * gap - gap0 * gap0 - 2.0 * (kappa - 4.0) * rec.times[k]) / (gap0 * gap0));
    }
  }
  return {worst < 1e-5, "max relative defect " + num(worst)};
}

Verdict hoermander() {
  Rng rng(500);
  double worst_cos = 1.0;
  bool ranks = true;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto c = random_config(n, rng);
      for (int k = 1; k < static_cast<int>(2 * n); ++k)
        worst_cos = std::min(worst_cos, parallelism(numeric_bracket(c, k), closed_form_bracket(c, k)));
      ranks = ranks && hoermander_rank(c).rank == static_cast<int>(2 * n);
    }
  }
  return {ranks && worst_cos > 1.0 - 1e-8,
          std::string("ranks ") + (ranks ? "all full" : "deficient") + ", min cosine 1 - " + num(1.0 - worst_cos)};
}

Verdict convex_identity() {
  Rng rng(600);
  double worst = 0.0;
  for (double kappa : {3.0, 4.0}) {
    const KappaParams params(kappa);
    const auto total = PartitionEvaluator::total(kappa);
    const auto anchor = config_with_cross_ratio(0.3);
    const auto p = predict_pairing_probabilities(params, anchor);
    const auto combined =
        convex_combine({p.at(pairing_alpha1()), p.at(pairing_alpha2())},
                       {PartitionEvaluator::pure_channel(params, pairing_alpha1()),
                        PartitionEvaluator::pure_channel(params, pairing_alpha2())},
                       anchor, total(anchor));
    for (int trial = 0; trial < 100; ++trial) {
      const auto c = random_config(2, rng);
      worst = std::max(worst, std::abs(combined(c) - total(c)) / total(c));
    }
  }
  return {worst < 1e-5, "max relative error " + num(worst)};
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
#ifdef MULTISLE_CLI_PATH
  const std::string cmd = std::string(MULTISLE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  Run r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
#else
  (void)args;
  return {};
#endif
}

Verdict determinism() {
  const std::vector<std::string> commands = {
      "zeval --kappa 3 --points 0,1,2,3 --probs",
      "zeval --kappa 4 --points 0,0.5,2,3 --pairing 1-4,2-3",
      "verify-pde --configs 5 --seed 9",
      "verify-covariance --configs 3 --maps 3 --seed 9",
      "verify-sumrule",
      "hoermander --points 0,1,2.5,3,4.5,7",
      "loewner-sim --kappa 3 --points 0,1,2,3 --paths 20 --seed 9",
      "loewner-sim --kappa 4 --points 0,1,2,3 --paths 20 --seed 9 --format csv",
      "martingale --kappa 4 --points 0,1,2,3 --paths 50 --seed 9",
      "ising --width 6 --height 6 --samples 50 --burn-in 20 --seed 9",
      "ising --width 2 --height 3 --exact",
      "explorer --radius 4 --marks 0,6,12,18 --runs 50 --seed 9",
      "experiment --model ising --width 6 --height 6 --samples 200 --stride 2 --burn-in 50 --seed 9",
      "experiment --model explorer --width 10 --height 20 --samples 200 --seed 9 --format csv",
      "experiment --model explorer --shape disc --radius 3 --marks 0,4,9,13 --samples 50 --seed 9 --format svg",
  };
  std::size_t stable = 0;
  std::string failures;
  for (const auto& args : commands) {
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    const bool ok = (a.code == 0 || a.code == 2) && a.code == b.code && !a.out.empty() && a.out == b.out;
    if (ok) ++stable;
    else failures += " [" + args + "]";
  }
  return {stable == commands.size(),
          std::to_string(stable) + "/" + std::to_string(commands.size()) + " commands byte-stable" + failures};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"pde verification", pde},
      {"Moebius covariance", covariance},
      {"Pfaffian vs signed pairing sum", pfaffian},
      {"sum rule", sum_rule},
      {"symmetry anchor", symmetry},
      {"Ising pairing law at 64x64 and 64x128", ising_desk_scale},
      {"harmonic explorer pairing law, aspect 2", explorer_desk_scale},
      {"Glauber sampler vs exact enumeration", sampler_oracle},
      {"martingale diagnostics", martingale},
      {"zero-noise gap law", gap_law},
      {"Hoermander brackets and rank", hoermander},
      {"convex-combination identity", convex_identity},
      {"CLI determinism", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first << "): " << v.detail
              << " [" << num(secs) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
