#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "multisle/hex_domain.hpp"
#include "multisle/pairing.hpp"
#include "multisle/random.hpp"

namespace msle {

/// Order in which unfinished interfaces are advanced, one edge at a time.
enum class Schedule { RoundRobin, Sequential };

/// How an undetermined face ahead of a tip gets its colour. Both have the
/// law of the colour first hit by a dual random walk: Dirichlet solves the
/// harmonic problem and flips a coin, Walk runs the walk itself.
enum class HittingSampler { Dirichlet, Walk };

std::string to_string(Schedule s);
std::string to_string(HittingSampler s);
Schedule parse_schedule(const std::string& s);
HittingSampler parse_sampler(const std::string& s);

struct ExplorerOptions {
  Schedule schedule = Schedule::RoundRobin;
  HittingSampler sampler = HittingSampler::Dirichlet;
};

/// Probability that the random walk on the face graph started at `face`
/// reaches a black face before a white one. Solves the discrete Dirichlet
/// problem on the undetermined faces. Throws Degenerate if some
/// undetermined faces cannot reach a coloured face.
double black_hitting_probability(const HexDomain& domain, const std::vector<HexColor>& coloring, std::size_t face);

struct HexInterface {
  /// Face pairs (white on the left, black on the right) of the edges walked.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t start_mark = 0;
  std::size_t end_mark = 0;
};

struct ExplorerResult {
  std::vector<HexInterface> interfaces;
  PlanarPairing pairing;
  std::vector<HexColor> coloring;
  std::size_t random_steps = 0;
};

/// Grows the interfaces from the odd marks. Faces already coloured in
/// `coloring` are kept. Throws NumericalFailure past 10 x face count steps.
ExplorerResult run_explorer(const HexDomain& domain, std::vector<HexColor> coloring, Rng& rng,
                            const ExplorerOptions& options = {});
ExplorerResult run_explorer(const HexDomain& domain, Rng& rng, const ExplorerOptions& options = {});

/// Pairing of each of n_runs independent runs; run r uses derive_seed(seed, r).
std::vector<PlanarPairing> sample_explorer_pairings(const HexDomain& domain, std::size_t n_runs, std::uint64_t seed,
                                                   const ExplorerOptions& options = {}, std::size_t workers = 0);

/// Counts of sample_explorer_pairings.
std::map<PlanarPairing, std::size_t> estimate_pairing_frequencies(const HexDomain& domain, std::size_t n_runs,
                                                                  std::uint64_t seed,
                                                                  const ExplorerOptions& options = {},
                                                                  std::size_t workers = 0);

}  // namespace msle
