#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace msle {

/// Non-crossing pair partition of {1, ..., 2N}, stored as sorted pairs
/// (a, b) with a < b. Labels are 1-based.
class PlanarPairing {
 public:
  using Pair = std::pair<int, int>;

  explicit PlanarPairing(std::vector<Pair> pairs);

  /// Parses "1-2,3-4".
  static PlanarPairing parse(std::string_view text);

  const std::vector<Pair>& pairs() const noexcept { return pairs_; }
  std::size_t n_pairs() const noexcept { return pairs_.size(); }
  int partner(int label) const;

  /// "1-2,3-4"
  std::string to_string() const;
  /// [[1,2],[3,4]]
  std::string to_json() const;

  auto operator<=>(const PlanarPairing&) const = default;

 private:
  std::vector<Pair> pairs_;
};

/// True iff no two pairs cross. Throws InvalidArgument if `pairs` is not a
/// pair partition of {1, ..., 2N}.
bool is_planar(const std::vector<PlanarPairing::Pair>& pairs);

/// All Catalan(N) planar pairings, ordered lexicographically by pair list.
std::vector<PlanarPairing> enumerate_pairings(int n_pairs);

std::uint64_t catalan(int n);

/// Swaps {{1,2},{3,4}} and {{1,4},{2,3}}.
PlanarPairing complement_channel(const PlanarPairing& pairing);

/// {{1,2},{3,4}}
PlanarPairing pairing_alpha1();
/// {{1,4},{2,3}}
PlanarPairing pairing_alpha2();

}  // namespace msle
