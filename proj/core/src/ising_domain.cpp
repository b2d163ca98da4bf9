#include "multisle/ising_domain.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "multisle/error.hpp"

namespace msle {
namespace {

constexpr std::array<std::array<int, 2>, 4> kSideOffset{{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};

// Directed boundary edge of (x, y) on `side`, domain on the left.
std::pair<Vertex, Vertex> side_segment(const Face& f, int side) {
  switch (side) {
    case kBottom: return {{f.x, f.y}, {f.x + 1, f.y}};
    case kRight: return {{f.x + 1, f.y}, {f.x + 1, f.y + 1}};
    case kTop: return {{f.x + 1, f.y + 1}, {f.x, f.y + 1}};
    default: return {{f.x, f.y + 1}, {f.x, f.y}};
  }
}

}  // namespace

FaceDomain::FaceDomain(std::vector<Face> faces, std::vector<Vertex> marks)
    : faces_(std::move(faces)), marks_(std::move(marks)) {
  if (faces_.empty()) throw InvalidArgument("face domain needs at least one face");
  if (marks_.size() < 2 || marks_.size() % 2 != 0) {
    throw InvalidArgument("face domain needs an even number (>= 2) of marked vertices");
  }
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  if (std::adjacent_find(faces_.begin(), faces_.end()) != faces_.end()) {
    throw InvalidArgument("duplicate face");
  }
  int max_x = faces_[0].x, max_y = faces_[0].y;
  min_x_ = faces_[0].x;
  min_y_ = faces_[0].y;
  for (const auto& f : faces_) {
    min_x_ = std::min(min_x_, f.x);
    min_y_ = std::min(min_y_, f.y);
    max_x = std::max(max_x, f.x);
    max_y = std::max(max_y, f.y);
  }
  width_ = max_x - min_x_ + 1;
  height_ = max_y - min_y_ + 1;
  grid_.assign(static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_), -1);
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    grid_[static_cast<std::size_t>(faces_[i].y - min_y_) * static_cast<std::size_t>(width_) +
          static_cast<std::size_t>(faces_[i].x - min_x_)] = static_cast<int>(i);
  }

  // connectivity of the faces
  std::vector<char> seen(faces_.size(), 0);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!q.empty()) {
    const auto f = q.front();
    q.pop();
    for (const auto& o : kSideOffset) {
      const int g = face_index(faces_[f].x + o[0], faces_[f].y + o[1]);
      if (g >= 0 && !seen[static_cast<std::size_t>(g)]) {
        seen[static_cast<std::size_t>(g)] = 1;
        ++reached;
        q.push(static_cast<std::size_t>(g));
      }
    }
  }
  if (reached != faces_.size()) throw InvalidArgument("faces of the domain are not connected");

  // boundary edges and neighbour cells
  std::vector<std::pair<int, int>> raw_edges;
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    for (int s = 0; s < 4; ++s) {
      if (face_index(faces_[f].x + kSideOffset[s][0], faces_[f].y + kSideOffset[s][1]) < 0) {
        raw_edges.emplace_back(static_cast<int>(f), s);
      }
    }
  }
  std::map<Vertex, std::size_t> outgoing;
  for (std::size_t e = 0; e < raw_edges.size(); ++e) {
    const auto seg = side_segment(faces_[static_cast<std::size_t>(raw_edges[e].first)], raw_edges[e].second);
    if (!outgoing.emplace(seg.first, e).second) {
      throw InvalidArgument("domain boundary is pinched at a vertex");
    }
  }
  // walk the boundary counterclockwise from the lowest, leftmost vertex
  const Vertex start = outgoing.begin()->first;
  Vertex lowest = start;
  for (const auto& [v, e] : outgoing) {
    if (v.y < lowest.y || (v.y == lowest.y && v.x < lowest.x)) lowest = v;
  }
  std::vector<std::size_t> order;
  Vertex v = lowest;
  do {
    const auto it = outgoing.find(v);
    if (it == outgoing.end()) throw InvalidArgument("domain boundary is not closed");
    order.push_back(it->second);
    v = side_segment(faces_[static_cast<std::size_t>(raw_edges[it->second].first)], raw_edges[it->second].second).second;
    if (order.size() > raw_edges.size()) throw InvalidArgument("domain boundary is not a simple cycle");
  } while (!(v == lowest));
  if (order.size() != raw_edges.size()) {
    throw InvalidArgument("domain is not simply connected (boundary has several components)");
  }

  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto [f, s] = raw_edges[order[k]];
    const auto seg = side_segment(faces_[static_cast<std::size_t>(f)], s);
    edges_.push_back({f, static_cast<Side>(s), seg.first, seg.second, 0});
    cycle_.push_back(seg.first);
  }

  // marks: on the boundary, counterclockwise
  std::vector<std::size_t> pos;
  for (const auto& m : marks_) {
    const auto it = std::find(cycle_.begin(), cycle_.end(), m);
    if (it == cycle_.end()) throw InvalidArgument("marked vertex is not on the domain boundary");
    pos.push_back(static_cast<std::size_t>(it - cycle_.begin()));
  }
  int descents = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const auto a = pos[i], b = pos[(i + 1) % pos.size()];
    if (a == b) throw InvalidArgument("marked vertices must be distinct");
    if (b < a) ++descents;
  }
  if (descents != 1) throw InvalidArgument("marked vertices are not in counterclockwise order");

  for (std::size_t k = 0; k < edges_.size(); ++k) {
    int arc = static_cast<int>(marks_.size()) - 1;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const auto a = pos[i], b = pos[(i + 1) % pos.size()];
      const bool inside = a < b ? (k >= a && k < b) : (k >= a || k < b);
      if (inside) arc = static_cast<int>(i);
    }
    edges_[k].arc = arc;
  }

  nbr_.resize(faces_.size());
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    for (int s = 0; s < 4; ++s) {
      nbr_[f][static_cast<std::size_t>(s)] =
          face_index(faces_[f].x + kSideOffset[s][0], faces_[f].y + kSideOffset[s][1]);
    }
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    nbr_[static_cast<std::size_t>(edges_[e].face)][edges_[e].side] =
        static_cast<std::int32_t>(faces_.size() + e);
  }
}

FaceDomain FaceDomain::rectangle(int m, int n, std::vector<Vertex> marks) {
  if (m < 1 || n < 1) throw InvalidArgument("rectangle needs m, n >= 1");
  std::vector<Face> faces;
  faces.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < m; ++x) faces.push_back({x, y});
  }
  return FaceDomain(std::move(faces), std::move(marks));
}

std::vector<Vertex> FaceDomain::corner_marks(int m, int n) { return {{0, 0}, {m, 0}, {m, n}, {0, n}}; }

int FaceDomain::face_index(int x, int y) const noexcept {
  const int gx = x - min_x_, gy = y - min_y_;
  if (gx < 0 || gy < 0 || gx >= width_ || gy >= height_) return -1;
  return grid_[static_cast<std::size_t>(gy) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(gx)];
}

int FaceDomain::boundary_edge_of(std::size_t face, int side) const noexcept {
  const auto c = nbr_[face][static_cast<std::size_t>(side)];
  return c >= static_cast<std::int32_t>(faces_.size()) ? c - static_cast<int>(faces_.size()) : -1;
}

BoundaryConditions alternating_boundary_conditions(const FaceDomain& domain) {
  BoundaryConditions bc;
  bc.edge_spin.reserve(domain.boundary_edge_count());
  for (const auto& e : domain.boundary_edges()) bc.edge_spin.push_back(e.arc % 2 == 0 ? 1 : -1);
  return bc;
}

SpinConfiguration::SpinConfiguration(const FaceDomain& domain, const BoundaryConditions& bc, std::int8_t fill)
    : face_count_(domain.face_count()), cells_(domain.cell_count(), fill) {
  if (bc.edge_spin.size() != domain.boundary_edge_count()) {
    throw InvalidArgument("boundary conditions do not match the domain");
  }
  if (fill != 1 && fill != -1) throw InvalidArgument("spins are +1 or -1");
  std::copy(bc.edge_spin.begin(), bc.edge_spin.end(), cells_.begin() + static_cast<std::ptrdiff_t>(face_count_));
}

double energy(const FaceDomain& domain, const SpinConfiguration& sigma) {
  long h = 0;
  for (std::size_t f = 0; f < domain.face_count(); ++f) {
    for (const auto c : domain.neighbors(f)) {
      if (c < 0) continue;
      if (c >= static_cast<std::int32_t>(domain.face_count()) || static_cast<std::size_t>(c) > f) {
        h -= sigma.face_spin(f) * sigma.cell(static_cast<std::size_t>(c));
      }
    }
  }
  return static_cast<double>(h);
}

}  // namespace msle
