#include "multisle/tracer.hpp"

#include <cmath>

#include "multisle/error.hpp"

namespace msle {
namespace {

constexpr std::array<std::array<int, 2>, 4> kDir{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

double turn_angle(const std::array<double, 2>& h, double dx, double dy) {
  return std::atan2(h[0] * dy - h[1] * dx, h[0] * dx + h[1] * dy);
}

}  // namespace

InterfaceTracer::InterfaceTracer(const FaceDomain& domain, TurnRule rule)
    : domain_(&domain), rule_(rule), vw_(domain.width() + 1), vh_(domain.height() + 1) {
  const auto nv = static_cast<std::size_t>(vw_) * static_cast<std::size_t>(vh_);
  left_.assign(nv, {-1, -1, -1, -1});
  right_.assign(nv, {-1, -1, -1, -1});
  edge_.assign(nv, {-1, -1, -1, -1});
  mark_at_.assign(nv, -1);
  stamp_.assign(2 * nv + 2 * domain.n_pairs() + 2, 0);

  const auto nf = static_cast<std::int32_t>(domain.face_count());
  // cell on one side of an edge: the face, or the boundary edge of the face
  // on the other side
  auto cell = [&](int fx, int fy, int ox, int oy, int other_side) -> std::int32_t {
    const int f = domain.face_index(fx, fy);
    if (f >= 0) return f;
    const int g = domain.face_index(ox, oy);
    if (g < 0) return -1;
    return nf + domain.boundary_edge_of(static_cast<std::size_t>(g), other_side);
  };

  for (int y = domain.min_y(); y < domain.min_y() + vh_; ++y) {
    for (int x = domain.min_x(); x < domain.min_x() + vw_; ++x) {
      const auto v = vertex_index({x, y});
      // E: left (x, y), right (x, y - 1)
      std::array<std::array<std::int32_t, 2>, 4> lr{{
          {cell(x, y, x, y - 1, kTop), cell(x, y - 1, x, y, kBottom)},
          {cell(x - 1, y, x, y, kLeft), cell(x, y, x - 1, y, kRight)},
          {cell(x - 1, y - 1, x - 1, y, kBottom), cell(x - 1, y, x - 1, y - 1, kTop)},
          {cell(x, y - 1, x - 1, y - 1, kRight), cell(x - 1, y - 1, x, y - 1, kLeft)},
      }};
      for (int d = 0; d < 4; ++d) {
        if (lr[d][0] < 0 || lr[d][1] < 0) continue;
        left_[v][d] = lr[d][0];
        right_[v][d] = lr[d][1];
      }
      edge_[v][0] = static_cast<std::int32_t>(2 * v);
      edge_[v][1] = static_cast<std::int32_t>(2 * v + 1);
      if (x > domain.min_x()) edge_[v][2] = static_cast<std::int32_t>(2 * vertex_index({x - 1, y}));
      if (y > domain.min_y()) edge_[v][3] = static_cast<std::int32_t>(2 * vertex_index({x, y - 1}) + 1);
    }
  }

  const auto& marks = domain.marks();
  for (std::size_t i = 0; i < marks.size(); ++i) {
    const auto v = vertex_index(marks[i]);
    mark_at_[v] = static_cast<int>(i);
    mark_vertex_.push_back(v);
    std::array<double, 2> out{0.0, 0.0};
    const int x = marks[i].x, y = marks[i].y;
    for (const auto& [ox, oy] : std::array<std::array<int, 2>, 4>{{{0, 0}, {-1, 0}, {-1, -1}, {0, -1}}}) {
      if (domain.face_index(x + ox, y + oy) < 0) {
        out[0] += 2 * ox + 1;
        out[1] += 2 * oy + 1;
      }
    }
    outward_.push_back(out);
  }
}

std::size_t InterfaceTracer::vertex_index(const Vertex& v) const noexcept {
  return static_cast<std::size_t>(v.y - domain_->min_y()) * static_cast<std::size_t>(vw_) +
         static_cast<std::size_t>(v.x - domain_->min_x());
}

PlanarPairing InterfaceTracer::pairing(const SpinConfiguration& sigma) { return run(sigma, nullptr); }

TracedInterfaces InterfaceTracer::trace(const SpinConfiguration& sigma) {
  std::vector<std::vector<Vertex>> paths;
  auto p = run(sigma, &paths);
  return {std::move(paths), std::move(p)};
}

PlanarPairing InterfaceTracer::run(const SpinConfiguration& sigma, std::vector<std::vector<Vertex>>* paths) {
  if (sigma.cells().size() != domain_->cell_count()) {
    throw InvalidArgument("spin configuration does not match the domain");
  }
  if (++generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    generation_ = 1;
  }
  const auto sink_slot = [&](std::size_t mark) { return stamp_.size() - 1 - mark / 2; };
  const std::size_t cap = 4 * left_.size() + 8;
  const auto& cells = sigma.cells();
  // right-most is left-most with mirrored angles
  const double sign = rule_ == TurnRule::LeftMost ? 1.0 : -1.0;

  std::vector<PlanarPairing::Pair> pairs;
  for (std::size_t start = 0; start < mark_vertex_.size(); start += 2) {
    std::size_t v = mark_vertex_[start];
    std::array<double, 2> heading{-outward_[start][0], -outward_[start][1]};
    std::vector<Vertex> path;
    if (paths) path.push_back(domain_->marks()[start]);
    int end = -1;
    for (std::size_t step = 0; step < cap && end < 0; ++step) {
      int best = -1;
      double best_angle = -10.0;
      for (int d = 0; d < 4; ++d) {
        const auto l = left_[v][d];
        if (l < 0 || cells[static_cast<std::size_t>(l)] != -1 ||
            cells[static_cast<std::size_t>(right_[v][d])] != 1 ||
            stamp_[static_cast<std::size_t>(edge_[v][d])] == generation_) {
          continue;
        }
        const double a = sign * turn_angle(heading, kDir[d][0], kDir[d][1]);
        if (a > best_angle) {
          best_angle = a;
          best = d;
        }
      }
      const int m = mark_at_[v];
      if (m >= 0 && m % 2 == 1 && stamp_[sink_slot(static_cast<std::size_t>(m))] != generation_) {
        const auto& o = outward_[static_cast<std::size_t>(m)];
        if (sign * turn_angle(heading, o[0], o[1]) > best_angle) {
          stamp_[sink_slot(static_cast<std::size_t>(m))] = generation_;
          end = m;
          break;
        }
      }
      if (best < 0) {
        throw TracerError("interface from mark " + std::to_string(start + 1) + " got stuck");
      }
      stamp_[static_cast<std::size_t>(edge_[v][best])] = generation_;
      heading = {static_cast<double>(kDir[best][0]), static_cast<double>(kDir[best][1])};
      const int nx = static_cast<int>(v % static_cast<std::size_t>(vw_)) + kDir[best][0];
      const int ny = static_cast<int>(v / static_cast<std::size_t>(vw_)) + kDir[best][1];
      v = static_cast<std::size_t>(ny) * static_cast<std::size_t>(vw_) + static_cast<std::size_t>(nx);
      if (paths) path.push_back({nx + domain_->min_x(), ny + domain_->min_y()});
    }
    if (end < 0) throw TracerError("interface from mark " + std::to_string(start + 1) + " did not terminate");
    pairs.emplace_back(static_cast<int>(start) + 1, end + 1);
    if (paths) paths->push_back(std::move(path));
  }
  if (!is_planar(pairs)) throw TracerError("traced interfaces cross");
  return PlanarPairing(std::move(pairs));
}

TracedInterfaces trace_interfaces(const FaceDomain& domain, const SpinConfiguration& sigma, TurnRule rule) {
  InterfaceTracer tracer(domain, rule);
  return tracer.trace(sigma);
}

}  // namespace msle
