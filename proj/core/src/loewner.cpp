#include "multisle/loewner.hpp"

#include <cmath>
#include <limits>

#include "multisle/error.hpp"
#include "multisle/parallel.hpp"

namespace msle {

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Running: return "running";
    case StopReason::Cap: return "cap";
    case StopReason::Exit: return "exit";
    case StopReason::Swallow: return "swallow";
  }
  return "unknown";
}

BoundaryConfig LoewnerState::config() const {
  std::vector<double> x = V;
  x.at(j) = W;
  return BoundaryConfig(std::move(x));
}

LoewnerState initial_state(const BoundaryConfig& config, std::size_t j) {
  if (j >= config.size()) throw InvalidArgument("launch index out of range");
  LoewnerState s;
  s.V = config.points();
  s.W = config[j];
  s.j = j;
  s.scale = config.span();
  return s;
}

Localization Localization::around(std::size_t j, double radius) {
  return {j, radius, 0.25 * radius * radius};
}

void Localization::validate(const BoundaryConfig& config) const {
  if (j >= config.size()) throw InvalidArgument("launch index out of range");
  if (!(radius > 0.0)) throw InvalidArgument("localization radius must be positive");
  if (!(capacity_cap >= 0.0)) throw InvalidArgument("capacity cap must be nonnegative");
  if (!(radius < config.local_gap(j))) {
    throw InvalidArgument("localization radius must be below the distance to the nearest marked point");
  }
}

double drift(const PartitionEvaluator& z, const LoewnerState& state) {
  return z.params().kappa() * log_grad(z, state.config(), state.j);
}

namespace {

double min_gap(const LoewnerState& s) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < s.V.size(); ++i) {
    const double a = i - 1 == s.j ? s.W : s.V[i - 1];
    const double b = i == s.j ? s.W : s.V[i];
    g = std::min(g, b - a);
  }
  return g;
}

bool ordered(const LoewnerState& s) {
  for (std::size_t i = 1; i < s.V.size(); ++i) {
    const double a = i - 1 == s.j ? s.W : s.V[i - 1];
    const double b = i == s.j ? s.W : s.V[i];
    if (!(a < b)) return false;
  }
  return true;
}

}  // namespace

LoewnerState advance(const LoewnerState& state, double dt, NoiseSource& noise, const PartitionEvaluator& z) {
  if (!state.alive) throw InvalidArgument("advance called on a stopped state");
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  const double kappa = z.params().kappa();
  const double g = min_gap(state);
  double step = std::min(dt, 1e-3 * g * g);
  const double b = drift(z, state);
  const double xi = noise.standard_draw();

  for (int halving = 0; halving <= 20; ++halving, step *= 0.5) {
    LoewnerState next = state;
    next.W = state.W + b * step + std::sqrt(kappa * step) * xi;
    for (std::size_t i = 0; i < state.V.size(); ++i) {
      if (i != state.j) next.V[i] = state.V[i] + 2.0 * step / (state.V[i] - state.W);
    }
    next.V[state.j] = next.W;
    if (!ordered(next)) continue;
    next.t = state.t + step;
    next.drift_integral = state.drift_integral + b * step;
    ++next.steps;
    for (std::size_t i = 0; i < next.V.size(); ++i) {
      if (i != next.j && std::abs(next.V[i] - next.W) < 1e-6 * next.scale) {
        next.alive = false;
        next.reason = StopReason::Swallow;
      }
    }
    return next;
  }
  throw OrderBroken("Loewner step keeps breaking the ordering after 20 halvings");
}

PathRecord simulate(const BoundaryConfig& config, const Localization& loc, const PartitionEvaluator& z,
                    double dt, NoiseSource& noise, bool record_path) {
  loc.validate(config);
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  PathRecord rec;
  LoewnerState s = initial_state(config, loc.j);
  const double w0 = s.W;
  auto push = [&](const LoewnerState& st) {
    rec.times.push_back(st.t);
    rec.W.push_back(st.W);
    rec.V.push_back(st.V);
  };
  push(s);
  for (;;) {
    if (s.t >= loc.capacity_cap) {
      s.alive = false;
      s.reason = StopReason::Cap;
    } else if (std::abs(s.W - w0) >= loc.radius) {
      s.alive = false;
      s.reason = StopReason::Exit;
    }
    if (!s.alive) break;
    s = advance(s, std::min(dt, loc.capacity_cap - s.t), noise, z);
    if (record_path || !s.alive) push(s);
  }
  if (!record_path && s.steps > 0 && rec.times.back() != s.t) push(s);
  rec.reason = s.reason;
  rec.final_state = s;
  return rec;
}

std::vector<PathSummary> run_ensemble(const BoundaryConfig& config, const Localization& loc,
                                      const PartitionEvaluator& z, double dt, std::size_t n_paths,
                                      std::uint64_t seed, std::size_t workers) {
  loc.validate(config);
  std::vector<PathSummary> out(n_paths);
  parallel_for(
      n_paths,
      [&](std::size_t p) {
        NoiseSource noise(derive_seed(seed, p));
        const auto rec = simulate(config, loc, z, dt, noise, false);
        const auto& f = rec.final_state;
        out[p] = {p, noise.seed(), config[loc.j], f.W, f.t, f.drift_integral, f.steps, f.reason};
      },
      workers);
  return out;
}

MartingaleReport martingale_diagnostic(const PartitionEvaluator& z_num, const PartitionEvaluator& z_den,
                                       const BoundaryConfig& config, const Localization& loc, double dt,
                                       std::size_t n_paths, std::uint64_t seed, std::size_t workers) {
  if (!(z_num.params() == z_den.params())) throw InvalidArgument("martingale evaluators must share kappa");
  if (n_paths < 2) throw InvalidArgument("martingale diagnostic needs at least two paths");
  loc.validate(config);
  MartingaleReport rep;
  rep.n_paths = n_paths;
  rep.m0 = z_num(config) / z_den(config);
  std::vector<double> m(n_paths);
  std::vector<StopReason> reasons(n_paths);
  parallel_for(
      n_paths,
      [&](std::size_t p) {
        NoiseSource noise(derive_seed(seed, p));
        const auto rec = simulate(config, loc, z_den, dt, noise, false);
        const auto end = rec.final_state.config();
        m[p] = z_num(end) / z_den(end);
        reasons[p] = rec.reason;
      },
      workers);
  double sum = 0.0;
  for (double v : m) sum += v;
  rep.mean = sum / static_cast<double>(n_paths);
  double ss = 0.0;
  for (double v : m) ss += (v - rep.mean) * (v - rep.mean);
  rep.std_error = std::sqrt(ss / static_cast<double>(n_paths - 1) / static_cast<double>(n_paths));
  rep.deviation = std::abs(rep.mean - rep.m0);
  for (auto r : reasons) {
    if (r == StopReason::Cap) ++rep.cap_stops;
    if (r == StopReason::Exit) ++rep.exit_stops;
    if (r == StopReason::Swallow) ++rep.swallow_stops;
  }
  return rep;
}

}  // namespace msle
