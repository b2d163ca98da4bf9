#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "multisle/ising_domain.hpp"
#include "multisle/pairing.hpp"

namespace msle {

/// Tie-break at vertices where several colour-separating edges are free.
enum class TurnRule { LeftMost, RightMost };

struct TracedInterfaces {
  /// One vertex path per odd mark, in mark order.
  std::vector<std::vector<Vertex>> paths;
  PlanarPairing pairing;
};

/// Follows the spin interfaces of a face configuration from every odd mark.
/// Walks keep - on the left and + on the right, treat boundary-edge spins as
/// the colours of the outer quarter faces, and take the left-most available
/// edge at ambiguous vertices. Marks carry a virtual edge pointing out of the
/// domain: odd marks enter through it, even marks absorb through it.
///
/// Holds scratch space; use one instance per thread.
class InterfaceTracer {
 public:
  explicit InterfaceTracer(const FaceDomain& domain, TurnRule rule = TurnRule::LeftMost);

  /// Throws TracerError if a walk gets stuck or does not end at an even mark.
  PlanarPairing pairing(const SpinConfiguration& sigma);
  TracedInterfaces trace(const SpinConfiguration& sigma);

 private:
  PlanarPairing run(const SpinConfiguration& sigma, std::vector<std::vector<Vertex>>* paths);
  std::size_t vertex_index(const Vertex& v) const noexcept;

  const FaceDomain* domain_;
  TurnRule rule_;
  int vw_ = 0;
  int vh_ = 0;
  // per vertex and direction (E, N, W, S): cells left and right of the edge
  // (-1 if the edge is not in the domain) and an undirected edge id
  std::vector<std::array<std::int32_t, 4>> left_;
  std::vector<std::array<std::int32_t, 4>> right_;
  std::vector<std::array<std::int32_t, 4>> edge_;
  std::vector<int> mark_at_;
  std::vector<std::size_t> mark_vertex_;
  std::vector<std::array<double, 2>> outward_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

TracedInterfaces trace_interfaces(const FaceDomain& domain, const SpinConfiguration& sigma,
                                  TurnRule rule = TurnRule::LeftMost);

}  // namespace msle
