#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "multisle/explorer.hpp"
#include "multisle/ising.hpp"
#include "multisle/report.hpp"

namespace msle {

/// One lattice experiment. The Ising model goes with kappa 3 and the
/// harmonic explorer with kappa 4.
struct ExperimentSpec {
  std::string model = "ising";
  /// "rectangle" for both models, "disc" for the explorer.
  std::string shape = "rectangle";
  /// Ising: face counts. Explorer: extent in units of the hexagon spacing.
  double width = 8.0;
  double height = 8.0;
  int radius = 5;
  /// Ising marked vertices; empty means the four corners.
  std::vector<std::array<int, 2>> ising_marks;
  /// Explorer disc marks (loop positions).
  std::vector<std::size_t> hex_marks{0, 5, 15, 20};

  std::size_t samples = 1000;
  std::uint64_t seed = 1;

  double beta = critical_beta();
  std::size_t stride = 10;
  std::size_t burn_in = 1000;
  std::size_t chains = 1;

  Schedule schedule = Schedule::RoundRobin;
  HittingSampler sampler = HittingSampler::Walk;

  double z_threshold = 4.0;
  double bias_budget = 0.03;
  std::size_t workers = 0;

  double kappa() const { return model == "ising" ? 3.0 : 4.0; }
};

/// Reads the JSON document form; unknown keys and a "kappa" that does not
/// match the model are rejected.
ExperimentSpec parse_experiment_spec(const std::string& json_text);
std::string to_json(const ExperimentSpec& spec);

/// Samples the lattice model and compares with the continuum prediction for
/// rectangles with corner marks (N = 2) or any domain with N = 1. Other
/// cases carry estimates only.
Report run_experiment(const ExperimentSpec& spec);

}  // namespace msle
