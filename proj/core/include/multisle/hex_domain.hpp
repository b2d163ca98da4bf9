#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

namespace msle {

/// Axial coordinates of a pointy-top hexagon; the centre sits at
/// (q + r/2, r*sqrt(3)/2) in units of the centre spacing.
struct Axial {
  int q = 0;
  int r = 0;
  auto operator<=>(const Axial&) const = default;
};

/// Neighbour offsets, counterclockwise starting east.
inline constexpr std::array<Axial, 6> kHexDirections{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

enum class HexColor : std::int8_t { Undetermined = 0, White = 1, Black = 2 };

/// Faces on or inside a simple counterclockwise loop of hexagons. Mark a
/// (a loop index) sits on the edge between loop faces a-1 and a; loop faces
/// from an odd-numbered mark to the next mark are black, the others white.
class HexDomain {
 public:
  HexDomain(std::vector<Axial> loop, std::vector<std::size_t> marks);

  /// Hexagonal disc of the given radius; the loop is the outer ring starting
  /// at (0, -radius).
  static HexDomain disc(int radius, std::vector<std::size_t> marks);
  /// Faces whose centres lie in [0, width] x [0, height], with marks on the
  /// loop faces closest to the corners (bottom-left first, counterclockwise).
  static HexDomain rectangle(double width, double height);

  std::size_t face_count() const noexcept { return faces_.size(); }
  std::size_t n_pairs() const noexcept { return marks_.size() / 2; }
  const std::vector<Axial>& faces() const noexcept { return faces_; }
  /// Face indices of the loop, in order.
  const std::vector<std::size_t>& loop() const noexcept { return loop_; }
  const std::vector<std::size_t>& marks() const noexcept { return marks_; }
  /// Face index or -1.
  int index(Axial a) const noexcept;
  /// Neighbour face indices by direction, -1 outside the domain.
  const std::array<std::int32_t, 6>& neighbors(std::size_t f) const noexcept { return nbr_[f]; }
  bool on_loop(std::size_t f) const noexcept { return loop_pos_[f] >= 0; }
  /// Position of f in the loop or -1.
  int loop_position(std::size_t f) const noexcept { return loop_pos_[f]; }
  std::array<double, 2> center(std::size_t f) const noexcept;

  /// Loop faces coloured by their segment, interior faces undetermined.
  std::vector<HexColor> initial_coloring() const;

 private:
  std::vector<Axial> faces_;
  std::vector<std::size_t> loop_;
  std::vector<std::size_t> marks_;
  std::vector<int> loop_pos_;
  std::vector<std::array<std::int32_t, 6>> nbr_;
  std::vector<int> grid_;
  int min_q_ = 0, min_r_ = 0, span_q_ = 0, span_r_ = 0;
};

}  // namespace msle
