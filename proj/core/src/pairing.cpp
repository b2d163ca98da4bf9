#include "multisle/pairing.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "multisle/error.hpp"

namespace msle {
namespace {

std::vector<PlanarPairing::Pair> normalized(std::vector<PlanarPairing::Pair> pairs) {
  for (auto& [a, b] : pairs) {
    if (a > b) std::swap(a, b);
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

void require_partition(const std::vector<PlanarPairing::Pair>& pairs) {
  if (pairs.empty()) throw InvalidArgument("pairing must contain at least one pair");
  const int n = static_cast<int>(2 * pairs.size());
  std::vector<int> seen(n + 1, 0);
  for (const auto& [a, b] : pairs) {
    if (a < 1 || b < 1 || a > n || b > n || a == b) {
      throw InvalidArgument("pair labels must be distinct and lie in 1..2N");
    }
    if (seen[a]++ || seen[b]++) throw InvalidArgument("label used twice in pairing");
  }
}

}  // namespace

bool is_planar(const std::vector<PlanarPairing::Pair>& raw) {
  require_partition(raw);
  const auto pairs = normalized(raw);
  for (const auto& [a, b] : pairs) {
    for (const auto& [c, d] : pairs) {
      if (a < c && c < b && b < d) return false;
    }
  }
  return true;
}

PlanarPairing::PlanarPairing(std::vector<Pair> pairs) : pairs_(normalized(std::move(pairs))) {
  if (!is_planar(pairs_)) throw InvalidArgument("pairing is not planar");
}

PlanarPairing PlanarPairing::parse(std::string_view text) {
  std::vector<Pair> pairs;
  std::size_t pos = 0;
  auto read_int = [&](int& out) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), out);
    if (ec != std::errc()) throw InvalidArgument("cannot parse pairing '" + std::string(text) + "'");
    pos = static_cast<std::size_t>(ptr - text.data());
  };
  while (pos < text.size()) {
    int a = 0, b = 0;
    read_int(a);
    if (pos >= text.size() || text[pos] != '-') {
      throw InvalidArgument("cannot parse pairing '" + std::string(text) + "'");
    }
    ++pos;
    read_int(b);
    pairs.emplace_back(a, b);
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos < text.size()) {
      if (text[pos] != ',') throw InvalidArgument("cannot parse pairing '" + std::string(text) + "'");
      ++pos;
    }
  }
  return PlanarPairing(std::move(pairs));
}

int PlanarPairing::partner(int label) const {
  for (const auto& [a, b] : pairs_) {
    if (a == label) return b;
    if (b == label) return a;
  }
  throw InvalidArgument("label not in pairing");
}

std::string PlanarPairing::to_string() const {
  std::string s;
  for (const auto& [a, b] : pairs_) {
    if (!s.empty()) s += ',';
    s += std::to_string(a) + '-' + std::to_string(b);
  }
  return s;
}

std::string PlanarPairing::to_json() const {
  std::string s = "[";
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i) s += ',';
    s += '[' + std::to_string(pairs_[i].first) + ',' + std::to_string(pairs_[i].second) + ']';
  }
  return s + ']';
}

std::vector<PlanarPairing> enumerate_pairings(int n_pairs) {
  if (n_pairs < 1) throw InvalidArgument("enumerate_pairings needs N >= 1");
  if (n_pairs > 12) throw InvalidArgument("enumerate_pairings supports N <= 12");
  std::vector<std::vector<PlanarPairing::Pair>> out;
  std::vector<PlanarPairing::Pair> current;
  // Labels lo..hi (inclusive, even count) are matched recursively: lo pairs
  // with some m of opposite parity, splitting the rest into inside and outside.
  std::function<void(std::vector<std::pair<int, int>>)> rec =
      [&](std::vector<std::pair<int, int>> ranges) {
        while (!ranges.empty() && ranges.back().first > ranges.back().second) ranges.pop_back();
        if (ranges.empty()) {
          out.push_back(current);
          return;
        }
        const auto [lo, hi] = ranges.back();
        ranges.pop_back();
        for (int m = lo + 1; m <= hi; m += 2) {
          current.emplace_back(lo, m);
          auto next = ranges;
          next.emplace_back(m + 1, hi);
          next.emplace_back(lo + 1, m - 1);
          rec(next);
          current.pop_back();
        }
      };
  rec({{1, 2 * n_pairs}});
  std::vector<PlanarPairing> result;
  result.reserve(out.size());
  for (auto& p : out) result.emplace_back(std::move(p));
  std::sort(result.begin(), result.end());
  return result;
}

std::uint64_t catalan(int n) {
  if (n < 0) throw InvalidArgument("catalan needs n >= 0");
  std::uint64_t c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

PlanarPairing pairing_alpha1() { return PlanarPairing({{1, 2}, {3, 4}}); }
PlanarPairing pairing_alpha2() { return PlanarPairing({{1, 4}, {2, 3}}); }

PlanarPairing complement_channel(const PlanarPairing& pairing) {
  if (pairing.n_pairs() != 2) throw InvalidArgument("complement_channel needs N = 2");
  std::vector<PlanarPairing::Pair> rotated;
  for (const auto& [a, b] : pairing.pairs()) {
    rotated.emplace_back((a + 2) % 4 + 1, (b + 2) % 4 + 1);
  }
  return PlanarPairing(std::move(rotated));
}

}  // namespace msle
