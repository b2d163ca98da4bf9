#include "oracles.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

namespace {

double pairing_sum(const std::vector<double>& x, std::vector<int>& rest) {
  if (rest.empty()) return 1.0;
  const int a = rest.front();
  double total = 0.0;
  for (std::size_t k = 1; k < rest.size(); ++k) {
    const int b = rest[k];
    // crossings of (a, b) have the parity of the points enclosed by it
    const double sign = (k - 1) % 2 == 0 ? 1.0 : -1.0;
    std::vector<int> next;
    next.reserve(rest.size() - 2);
    for (std::size_t i = 1; i < rest.size(); ++i)
      if (i != k) next.push_back(rest[i]);
    total += sign / (x[b] - x[a]) * pairing_sum(x, next);
  }
  return total;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

constexpr int kDx[4] = {0, 1, 0, -1};
constexpr int kDy[4] = {-1, 0, 1, 0};

}  // namespace

double signed_pairing_sum(const msle::BoundaryConfig& config) {
  std::vector<int> rest(config.size());
  std::iota(rest.begin(), rest.end(), 0);
  return pairing_sum(config.points(), rest);
}

double hypergeometric_branch(double kappa, double z) {
  const double a = 4.0 / kappa;
  const double b = 1.0 - 4.0 / kappa;
  const double c = 8.0 / kappa;
  const double at_zero = std::tgamma(c) * std::tgamma(c - a - b) / (std::tgamma(c - a) * std::tgamma(c - b));
  return std::pow(1.0 - z, 2.0 / kappa) * boost::math::hypergeometric_pFq({a, b}, {c}, 1.0 - z) / at_zero;
}

double pure_Z(double kappa, const msle::BoundaryConfig& config, const msle::PlanarPairing& pairing) {
  const auto& x = config.points();
  const double h = (6.0 - kappa) / (2.0 * kappa);
  const double z = (x[1] - x[0]) * (x[3] - x[2]) / ((x[2] - x[0]) * (x[3] - x[1]));
  if (pairing == msle::pairing_alpha1())
    return std::pow((x[1] - x[0]) * (x[3] - x[2]), -2.0 * h) * hypergeometric_branch(kappa, z);
  if (pairing == msle::pairing_alpha2())
    return std::pow((x[3] - x[0]) * (x[2] - x[1]), -2.0 * h) * hypergeometric_branch(kappa, 1.0 - z);
  throw std::invalid_argument("N = 2 pairings only");
}

double ising_energy(const msle::FaceDomain& domain, const msle::SpinConfiguration& sigma) {
  std::map<std::pair<int, int>, std::size_t> index;
  for (std::size_t f = 0; f < domain.face_count(); ++f) index[{domain.faces()[f].x, domain.faces()[f].y}] = f;
  std::map<std::pair<std::size_t, int>, std::size_t> edge_at;
  for (std::size_t e = 0; e < domain.boundary_edge_count(); ++e) {
    const auto& be = domain.boundary_edges()[e];
    edge_at[{static_cast<std::size_t>(be.face), static_cast<int>(be.side)}] = e;
  }
  double h = 0.0;
  for (const auto& [xy, f] : index) {
    for (int side = 0; side < 4; ++side) {
      const auto it = index.find({xy.first + kDx[side], xy.second + kDy[side]});
      if (it != index.end()) {
        if (side == msle::kRight || side == msle::kTop) h -= sigma.face_spin(f) * sigma.face_spin(it->second);
      } else {
        h -= sigma.face_spin(f) * sigma.edge_spin(edge_at.at({f, side}));
      }
    }
  }
  return h;
}

msle::PlanarPairing connectivity_pairing(const msle::FaceDomain& domain, const msle::SpinConfiguration& sigma,
                                         msle::TurnRule rule) {
  if (domain.n_pairs() != 2) throw std::invalid_argument("N = 2 only");
  const int colour = rule == msle::TurnRule::LeftMost ? -1 : 1;
  const std::size_t nf = domain.face_count();
  UnionFind uf(domain.cell_count());
  std::map<std::pair<int, int>, std::size_t> index;
  for (std::size_t f = 0; f < nf; ++f) index[{domain.faces()[f].x, domain.faces()[f].y}] = f;
  for (const auto& [xy, f] : index) {
    if (sigma.face_spin(f) != colour) continue;
    for (int side = 0; side < 4; ++side) {
      const auto it = index.find({xy.first + kDx[side], xy.second + kDy[side]});
      if (it != index.end() && sigma.face_spin(it->second) == colour) uf.unite(f, it->second);
    }
  }
  std::vector<std::size_t> first_of_arc(4, SIZE_MAX);
  for (std::size_t e = 0; e < domain.boundary_edge_count(); ++e) {
    const auto& be = domain.boundary_edges()[e];
    if (sigma.edge_spin(e) != colour) continue;
    const std::size_t cell = nf + e;
    if (first_of_arc[be.arc] == SIZE_MAX) first_of_arc[be.arc] = cell;
    uf.unite(cell, first_of_arc[be.arc]);
    if (sigma.face_spin(be.face) == colour) uf.unite(cell, be.face);
  }
  // minus arcs are 1 and 3, plus arcs 0 and 2
  const int a = colour < 0 ? 1 : 0;
  const bool joined = first_of_arc[a] != SIZE_MAX && first_of_arc[a + 2] != SIZE_MAX &&
                      uf.find(first_of_arc[a]) == uf.find(first_of_arc[a + 2]);
  const bool alpha1 = colour < 0 ? joined : !joined;
  return alpha1 ? msle::pairing_alpha1() : msle::pairing_alpha2();
}

std::map<msle::PlanarPairing, double> enumerate_pairing_law(const msle::FaceDomain& domain, double beta,
                                                            msle::TurnRule rule) {
  const std::size_t nf = domain.face_count();
  if (nf > 20) throw std::invalid_argument("too many faces");
  const auto bc = msle::alternating_boundary_conditions(domain);
  msle::SpinConfiguration sigma(domain, bc);
  std::map<msle::PlanarPairing, double> weight;
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nf); ++mask) {
    for (std::size_t f = 0; f < nf; ++f) sigma.set_face_spin(f, (mask >> f) & 1 ? 1 : -1);
    const double w = std::exp(-beta * ising_energy(domain, sigma));
    weight[connectivity_pairing(domain, sigma, rule)] += w;
    total += w;
  }
  for (auto& [p, w] : weight) w /= total;
  return weight;
}

}  // namespace oracle
