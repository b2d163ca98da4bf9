#include "multisle/explorer.hpp"

#include <algorithm>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "multisle/error.hpp"
#include "multisle/parallel.hpp"

namespace msle {
namespace {

int direction_between(const HexDomain& d, std::size_t from, std::size_t to) {
  const auto& n = d.neighbors(from);
  for (int k = 0; k < 6; ++k) {
    if (n[static_cast<std::size_t>(k)] == static_cast<std::int32_t>(to)) return k;
  }
  return -1;
}

bool walk_hits_black(const HexDomain& domain, const std::vector<HexColor>& coloring, std::size_t face, Rng& rng) {
  std::size_t f = face;
  for (;;) {
    const auto& n = domain.neighbors(f);
    // rejection keeps the choice uniform over the in-domain neighbours
    std::int32_t g;
    do {
      g = n[static_cast<std::size_t>(rng() % 6)];
    } while (g < 0);
    f = static_cast<std::size_t>(g);
    if (coloring[f] != HexColor::Undetermined) return coloring[f] == HexColor::Black;
  }
}

}  // namespace

std::string to_string(Schedule s) { return s == Schedule::RoundRobin ? "round-robin" : "sequential"; }
std::string to_string(HittingSampler s) { return s == HittingSampler::Dirichlet ? "dirichlet" : "walk"; }

Schedule parse_schedule(const std::string& s) {
  if (s == "round-robin") return Schedule::RoundRobin;
  if (s == "sequential") return Schedule::Sequential;
  throw InvalidArgument("unknown schedule '" + s + "'");
}

HittingSampler parse_sampler(const std::string& s) {
  if (s == "dirichlet") return HittingSampler::Dirichlet;
  if (s == "walk") return HittingSampler::Walk;
  throw InvalidArgument("unknown hitting sampler '" + s + "'");
}

double black_hitting_probability(const HexDomain& domain, const std::vector<HexColor>& coloring, std::size_t face) {
  if (coloring.size() != domain.face_count()) throw InvalidArgument("colouring does not match the domain");
  if (face >= domain.face_count()) throw InvalidArgument("face index out of range");
  if (coloring[face] != HexColor::Undetermined) throw InvalidArgument("face is already coloured");

  // unknowns: the undetermined faces connected to `face`
  std::vector<int> slot(domain.face_count(), -1);
  std::vector<std::size_t> order{face};
  slot[face] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto g : domain.neighbors(order[i])) {
      if (g < 0) continue;
      const auto gi = static_cast<std::size_t>(g);
      if (coloring[gi] == HexColor::Undetermined && slot[gi] < 0) {
        slot[gi] = static_cast<int>(order.size());
        order.push_back(gi);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(order.size());
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  bool absorbing = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    int degree = 0;
    for (const auto g : domain.neighbors(order[static_cast<std::size_t>(i)])) {
      if (g < 0) continue;
      ++degree;
      const auto gi = static_cast<std::size_t>(g);
      if (coloring[gi] == HexColor::Undetermined) {
        trips.emplace_back(i, slot[gi], -1.0);
      } else {
        absorbing = true;
        if (coloring[gi] == HexColor::Black) rhs[i] += 1.0;
      }
    }
    trips.emplace_back(i, i, static_cast<double>(degree));
  }
  if (!absorbing) throw Degenerate("no coloured face is reachable from the face");
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
  if (solver.info() != Eigen::Success) throw NumericalFailure("Dirichlet system could not be factorized");
  const Eigen::VectorXd h = solver.solve(rhs);
  return std::clamp(h[0], 0.0, 1.0);
}

ExplorerResult run_explorer(const HexDomain& domain, std::vector<HexColor> coloring, Rng& rng,
                            const ExplorerOptions& options) {
  if (coloring.size() != domain.face_count()) throw InvalidArgument("colouring does not match the domain");
  const auto& loop = domain.loop();
  const auto& marks = domain.marks();
  const std::size_t m = loop.size();
  const std::size_t n_int = domain.n_pairs();

  struct Tip {
    std::size_t white, black;
    bool done = false;
  };
  std::vector<Tip> tips;
  ExplorerResult result{{}, pairing_alpha1(), {}, 0};
  result.interfaces.resize(n_int);
  for (std::size_t i = 0; i < n_int; ++i) {
    const auto a = marks[2 * i];
    const auto white = loop[(a + m - 1) % m], black = loop[a];
    if (coloring[white] != HexColor::White || coloring[black] != HexColor::Black) {
      throw InvalidArgument("boundary colours do not change at an odd mark");
    }
    tips.push_back({white, black});
    result.interfaces[i].start_mark = 2 * i;
    result.interfaces[i].edges.emplace_back(white, black);
  }
  // (white, black) loop pair -> even mark
  const auto end_mark = [&](const Tip& t) -> int {
    const int pw = domain.loop_position(t.white), pb = domain.loop_position(t.black);
    if (pw < 0 || pb < 0) return -1;
    for (std::size_t k = 1; k < marks.size(); k += 2) {
      if (static_cast<std::size_t>(pw) == marks[k] && static_cast<std::size_t>(pb) == (marks[k] + m - 1) % m) {
        return static_cast<int>(k);
      }
    }
    return -1;
  };

  const std::size_t cap = 10 * domain.face_count();
  std::size_t steps = 0, finished = 0, cursor = 0;
  while (finished < n_int) {
    while (tips[cursor].done) cursor = (cursor + 1) % n_int;
    auto& tip = tips[cursor];
    if (++steps > cap) throw NumericalFailure("explorer exceeded its step cap");
    const int k = direction_between(domain, tip.black, tip.white);
    if (k < 0) throw NumericalFailure("interface tip faces are not adjacent");
    const auto ahead = domain.neighbors(tip.black)[static_cast<std::size_t>((k + 5) % 6)];
    if (ahead < 0) throw NumericalFailure("interface left the domain");
    const auto f = static_cast<std::size_t>(ahead);
    if (coloring[f] == HexColor::Undetermined) {
      bool black;
      if (options.sampler == HittingSampler::Dirichlet) {
        black = uniform01(rng) < black_hitting_probability(domain, coloring, f);
      } else {
        black = walk_hits_black(domain, coloring, f, rng);
      }
      coloring[f] = black ? HexColor::Black : HexColor::White;
      ++result.random_steps;
    }
    if (coloring[f] == HexColor::Black) {
      tip.black = f;
    } else {
      tip.white = f;
    }
    auto& iface = result.interfaces[cursor];
    iface.edges.emplace_back(tip.white, tip.black);
    const int e = end_mark(tip);
    if (e >= 0) {
      tip.done = true;
      iface.end_mark = static_cast<std::size_t>(e);
      ++finished;
    }
    if (options.schedule == Schedule::RoundRobin) cursor = (cursor + 1) % n_int;
  }

  std::vector<PlanarPairing::Pair> pairs;
  for (const auto& iface : result.interfaces) {
    pairs.emplace_back(static_cast<int>(iface.start_mark) + 1, static_cast<int>(iface.end_mark) + 1);
  }
  std::sort(pairs.begin(), pairs.end(), [](auto a, auto b) { return a.second < b.second; });
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].second == pairs[i - 1].second) throw NumericalFailure("two interfaces ended at the same mark");
  }
  result.pairing = PlanarPairing(std::move(pairs));
  result.coloring = std::move(coloring);
  return result;
}

ExplorerResult run_explorer(const HexDomain& domain, Rng& rng, const ExplorerOptions& options) {
  return run_explorer(domain, domain.initial_coloring(), rng, options);
}

std::vector<PlanarPairing> sample_explorer_pairings(const HexDomain& domain, std::size_t n_runs, std::uint64_t seed,
                                                   const ExplorerOptions& options, std::size_t workers) {
  std::vector<PlanarPairing> out(n_runs, pairing_alpha1());
  const auto initial = domain.initial_coloring();
  parallel_for(
      n_runs,
      [&](std::size_t r) {
        Rng rng(derive_seed(seed, r));
        out[r] = run_explorer(domain, initial, rng, options).pairing;
      },
      workers);
  return out;
}

std::map<PlanarPairing, std::size_t> estimate_pairing_frequencies(const HexDomain& domain, std::size_t n_runs,
                                                                  std::uint64_t seed, const ExplorerOptions& options,
                                                                  std::size_t workers) {
  std::map<PlanarPairing, std::size_t> counts;
  for (const auto& p : sample_explorer_pairings(domain, n_runs, seed, options, workers)) ++counts[p];
  return counts;
}

}  // namespace msle
