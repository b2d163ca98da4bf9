#include "multisle/hex_domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "multisle/error.hpp"

namespace msle {
namespace {

Axial operator+(Axial a, Axial b) { return {a.q + b.q, a.r + b.r}; }

int direction_of(Axial from, Axial to) {
  for (int d = 0; d < 6; ++d) {
    if (from + kHexDirections[static_cast<std::size_t>(d)] == to) return d;
  }
  return -1;
}

std::array<double, 2> center_of(Axial a) {
  return {a.q + 0.5 * a.r, a.r * std::sqrt(3.0) / 2.0};
}

}  // namespace

HexDomain::HexDomain(std::vector<Axial> loop, std::vector<std::size_t> marks) : marks_(std::move(marks)) {
  const std::size_t m = loop.size();
  if (m < 3) throw InvalidArgument("hex loop needs at least 3 faces");
  if (marks_.size() < 2 || marks_.size() % 2 != 0) {
    throw InvalidArgument("hex domain needs an even number (>= 2) of marked points");
  }
  if (std::set<Axial>(loop.begin(), loop.end()).size() != m) throw InvalidArgument("hex loop is not simple");
  double area = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (direction_of(loop[i], loop[(i + 1) % m]) < 0) {
      throw InvalidArgument("consecutive loop faces must be adjacent");
    }
    const auto a = center_of(loop[i]), b = center_of(loop[(i + 1) % m]);
    area += a[0] * b[1] - a[1] * b[0];
  }
  if (area <= 0.0) throw InvalidArgument("hex loop must run counterclockwise");

  // interior: faces in the bounding box not reachable from outside
  min_q_ = std::numeric_limits<int>::max();
  min_r_ = min_q_;
  int max_q = std::numeric_limits<int>::min(), max_r = max_q;
  for (const auto& a : loop) {
    min_q_ = std::min(min_q_, a.q - 1);
    min_r_ = std::min(min_r_, a.r - 1);
    max_q = std::max(max_q, a.q + 1);
    max_r = std::max(max_r, a.r + 1);
  }
  span_q_ = max_q - min_q_ + 1;
  span_r_ = max_r - min_r_ + 1;
  const auto cell = [&](Axial a) {
    return static_cast<std::size_t>(a.r - min_r_) * static_cast<std::size_t>(span_q_) +
           static_cast<std::size_t>(a.q - min_q_);
  };
  const auto in_box = [&](Axial a) {
    return a.q >= min_q_ && a.q <= max_q && a.r >= min_r_ && a.r <= max_r;
  };
  // 0 unknown, 1 loop, 2 outside
  std::vector<char> state(static_cast<std::size_t>(span_q_) * static_cast<std::size_t>(span_r_), 0);
  for (const auto& a : loop) state[cell(a)] = 1;
  std::queue<Axial> q;
  q.push({min_q_, min_r_});
  state[cell({min_q_, min_r_})] = 2;
  while (!q.empty()) {
    const auto a = q.front();
    q.pop();
    for (const auto& d : kHexDirections) {
      const auto b = a + d;
      if (in_box(b) && state[cell(b)] == 0) {
        state[cell(b)] = 2;
        q.push(b);
      }
    }
  }

  faces_ = loop;
  for (int r = min_r_; r <= max_r; ++r) {
    for (int qq = min_q_; qq <= max_q; ++qq) {
      if (state[cell({qq, r})] == 0) faces_.push_back({qq, r});
    }
  }
  if (faces_.size() == m) throw InvalidArgument("hex loop encloses no interior faces");
  grid_.assign(state.size(), -1);
  for (std::size_t i = 0; i < faces_.size(); ++i) grid_[cell(faces_[i])] = static_cast<int>(i);
  loop_.resize(m);
  loop_pos_.assign(faces_.size(), -1);
  for (std::size_t i = 0; i < m; ++i) {
    loop_[i] = i;
    loop_pos_[i] = static_cast<int>(i);
  }
  nbr_.resize(faces_.size());
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    for (std::size_t d = 0; d < 6; ++d) nbr_[i][d] = index(faces_[i] + kHexDirections[d]);
  }
  // interior faces must not touch the outside
  for (std::size_t i = m; i < faces_.size(); ++i) {
    for (const auto n : nbr_[i]) {
      if (n < 0) throw InvalidArgument("hex loop does not enclose its interior");
    }
  }

  int descents = 0;
  for (std::size_t i = 0; i < marks_.size(); ++i) {
    if (marks_[i] >= m) throw InvalidArgument("marked point outside the loop");
    const auto a = marks_[i], b = marks_[(i + 1) % marks_.size()];
    if (a == b) throw InvalidArgument("marked points must be distinct");
    if (b < a) ++descents;
  }
  if (descents != 1) throw InvalidArgument("marked points are not in counterclockwise order");
}

HexDomain HexDomain::disc(int radius, std::vector<std::size_t> marks) {
  if (radius < 1) throw InvalidArgument("hex disc needs radius >= 1");
  std::vector<Axial> ring;
  Axial a{0, -radius};
  for (std::size_t side = 0; side < 6; ++side) {
    for (int s = 0; s < radius; ++s) {
      ring.push_back(a);
      a = a + kHexDirections[side];
    }
  }
  return HexDomain(std::move(ring), std::move(marks));
}

HexDomain HexDomain::rectangle(double width, double height) {
  if (!(width > 2.0) || !(height > 2.0)) throw InvalidArgument("hex rectangle needs width, height > 2");
  const double s3 = std::sqrt(3.0) / 2.0;
  const auto inside = [&](Axial a) {
    const auto c = center_of(a);
    return c[0] >= 0.0 && c[0] <= width && c[1] >= 0.0 && c[1] <= height;
  };
  // boundary following, region kept on the left
  const int r_top = static_cast<int>(std::floor(height / s3));
  Axial start{0, 0};
  while (!inside(start)) ++start.q;
  std::vector<Axial> loop;
  Axial cur = start;
  int heading = 0;
  const std::size_t cap = 16 * static_cast<std::size_t>(width + height + 4) * static_cast<std::size_t>(r_top + 4);
  for (std::size_t step = 0; step < cap; ++step) {
    loop.push_back(cur);
    int next = -1;
    for (int t = -2; t <= 3; ++t) {
      const int d = ((heading + t) % 6 + 6) % 6;
      if (inside(cur + kHexDirections[static_cast<std::size_t>(d)])) {
        next = d;
        break;
      }
    }
    if (next < 0) throw InvalidArgument("hex rectangle is too small");
    cur = cur + kHexDirections[static_cast<std::size_t>(next)];
    heading = next;
    if (cur == start) break;
  }
  if (!(cur == start)) throw NumericalFailure("hex rectangle boundary did not close");

  const std::array<std::array<double, 2>, 4> corners{{{0.0, 0.0}, {width, 0.0}, {width, height}, {0.0, height}}};
  std::vector<std::size_t> marks;
  for (const auto& c : corners) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const auto p = center_of(loop[i]);
      const double d = std::hypot(p[0] - c[0], p[1] - c[1]);
      if (d < best_d - 1e-12) {
        best_d = d;
        best = i;
      }
    }
    marks.push_back(best);
  }
  return HexDomain(std::move(loop), std::move(marks));
}

int HexDomain::index(Axial a) const noexcept {
  const int gq = a.q - min_q_, gr = a.r - min_r_;
  if (gq < 0 || gr < 0 || gq >= span_q_ || gr >= span_r_) return -1;
  return grid_[static_cast<std::size_t>(gr) * static_cast<std::size_t>(span_q_) + static_cast<std::size_t>(gq)];
}

std::array<double, 2> HexDomain::center(std::size_t f) const noexcept { return center_of(faces_[f]); }

std::vector<HexColor> HexDomain::initial_coloring() const {
  std::vector<HexColor> c(faces_.size(), HexColor::Undetermined);
  const std::size_t m = loop_.size();
  for (std::size_t k = 0; k < marks_.size(); ++k) {
    const auto color = k % 2 == 0 ? HexColor::Black : HexColor::White;
    const std::size_t a = marks_[k], b = marks_[(k + 1) % marks_.size()];
    for (std::size_t i = a; i != b; i = (i + 1) % m) c[loop_[i]] = color;
  }
  return c;
}

}  // namespace msle
