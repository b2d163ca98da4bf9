#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

namespace msle {

struct Vertex {
  int x = 0;
  int y = 0;
  auto operator<=>(const Vertex&) const = default;
};

/// Unit square face identified by its lower-left corner.
struct Face {
  int x = 0;
  int y = 0;
  auto operator<=>(const Face&) const = default;
};

/// Sides of a face, counterclockwise from the bottom.
enum Side : int { kBottom = 0, kRight = 1, kTop = 2, kLeft = 3 };

/// A boundary edge, oriented so that the domain lies on its left.
struct BoundaryEdge {
  int face = 0;
  Side side = kBottom;
  Vertex from;
  Vertex to;
  /// 0-based arc index: arc a runs from mark a to mark a + 1 (cyclically).
  int arc = 0;
};

/// Simply connected union of unit faces with 2N marked boundary vertices.
/// Spins live in one array: faces first, then boundary edges, so every face
/// has exactly four neighbour cells.
class FaceDomain {
 public:
  FaceDomain(std::vector<Face> faces, std::vector<Vertex> marks);

  /// m x n rectangle of faces with lower-left corner at the origin.
  static FaceDomain rectangle(int m, int n, std::vector<Vertex> marks);
  /// (0,0), (m,0), (m,n), (0,n).
  static std::vector<Vertex> corner_marks(int m, int n);

  std::size_t face_count() const noexcept { return faces_.size(); }
  std::size_t boundary_edge_count() const noexcept { return edges_.size(); }
  std::size_t cell_count() const noexcept { return faces_.size() + edges_.size(); }
  std::size_t n_pairs() const noexcept { return marks_.size() / 2; }

  const std::vector<Face>& faces() const noexcept { return faces_; }
  const std::vector<BoundaryEdge>& boundary_edges() const noexcept { return edges_; }
  const std::vector<Vertex>& marks() const noexcept { return marks_; }
  /// Boundary vertices in counterclockwise order starting at the lowest,
  /// then leftmost, vertex.
  const std::vector<Vertex>& boundary_cycle() const noexcept { return cycle_; }

  /// Face index or -1.
  int face_index(int x, int y) const noexcept;
  /// Four neighbour cells of face f, by side.
  const std::array<std::int32_t, 4>& neighbors(std::size_t f) const noexcept { return nbr_[f]; }
  /// Boundary edge index of (face, side) or -1 for an interior side.
  int boundary_edge_of(std::size_t face, int side) const noexcept;

  int min_x() const noexcept { return min_x_; }
  int min_y() const noexcept { return min_y_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

 private:
  std::vector<Face> faces_;
  std::vector<Vertex> marks_;
  std::vector<Vertex> cycle_;
  std::vector<BoundaryEdge> edges_;
  std::vector<std::array<std::int32_t, 4>> nbr_;
  std::vector<int> grid_;
  int min_x_ = 0, min_y_ = 0, width_ = 0, height_ = 0;
};

/// Fixed spins of the boundary edges: +1 on arcs p1p2, p3p4, ..., else -1.
struct BoundaryConditions {
  std::vector<std::int8_t> edge_spin;
};

BoundaryConditions alternating_boundary_conditions(const FaceDomain& domain);

/// Face spins followed by the fixed boundary-edge spins.
class SpinConfiguration {
 public:
  SpinConfiguration(const FaceDomain& domain, const BoundaryConditions& bc, std::int8_t fill = 1);

  std::size_t face_count() const noexcept { return face_count_; }
  std::int8_t face_spin(std::size_t f) const noexcept { return cells_[f]; }
  void set_face_spin(std::size_t f, std::int8_t s) noexcept { cells_[f] = s; }
  std::int8_t edge_spin(std::size_t e) const noexcept { return cells_[face_count_ + e]; }
  std::int8_t cell(std::size_t c) const noexcept { return cells_[c]; }
  const std::vector<std::int8_t>& cells() const noexcept { return cells_; }
  std::vector<std::int8_t>& mutable_cells() noexcept { return cells_; }

 private:
  std::size_t face_count_;
  std::vector<std::int8_t> cells_;
};

/// H = -sum over face-face and face-edge adjacencies of the spin products.
double energy(const FaceDomain& domain, const SpinConfiguration& sigma);

}  // namespace msle
