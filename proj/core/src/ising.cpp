#include "multisle/ising.hpp"

#include <cmath>

#include "multisle/error.hpp"
#include "multisle/parallel.hpp"
#include "multisle/tracer.hpp"

namespace msle {

double critical_beta() noexcept { return 0.5 * std::log1p(std::sqrt(2.0)); }

GlauberChain::GlauberChain(const FaceDomain& domain, const BoundaryConditions& bc, IsingParams params,
                           std::uint64_t seed)
    : domain_(&domain), sigma_(domain, bc), rng_(seed) {
  if (!(params.beta >= 0.0) || !std::isfinite(params.beta)) {
    throw InvalidArgument("inverse temperature must be finite and non-negative");
  }
  for (int k = 0; k < 5; ++k) {
    const double h = 2.0 * k - 4.0;
    p_plus_[static_cast<std::size_t>(k)] = 1.0 / (1.0 + std::exp(-2.0 * params.beta * h));
  }
  for (std::size_t f = 0; f < sigma_.face_count(); ++f) sigma_.set_face_spin(f, (rng_() >> 63) ? 1 : -1);
}

void GlauberChain::update(std::size_t f) {
  auto& cells = sigma_.mutable_cells();
  int h = 0;
  for (const auto c : domain_->neighbors(f)) h += cells[static_cast<std::size_t>(c)];
  cells[f] = uniform01(rng_) < p_plus_[static_cast<std::size_t>((h + 4) / 2)] ? 1 : -1;
}

void GlauberChain::sweep() {
  for (std::size_t f = 0; f < sigma_.face_count(); ++f) update(f);
  ++sweeps_;
}

void GlauberChain::run(std::size_t sweeps) {
  for (std::size_t s = 0; s < sweeps; ++s) sweep();
}

std::vector<PairingSample> sample_pairings(const FaceDomain& domain, const BoundaryConditions& bc,
                                           IsingParams params, const SamplingPlan& plan, std::uint64_t seed) {
  if (plan.chains == 0 || plan.stride == 0) throw InvalidArgument("sampling needs chains >= 1 and stride >= 1");
  std::vector<std::vector<PairingSample>> per_chain(plan.chains);
  parallel_for(
      plan.chains,
      [&](std::size_t c) {
        const std::size_t n = plan.samples / plan.chains + (c < plan.samples % plan.chains ? 1 : 0);
        const auto chain_seed = derive_seed(seed, c);
        GlauberChain chain(domain, bc, params, chain_seed);
        InterfaceTracer tracer(domain);
        chain.run(plan.burn_in);
        auto& out = per_chain[c];
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
          chain.run(plan.stride);
          out.push_back({c, chain_seed, chain.sweep_count(), tracer.pairing(chain.state()),
                         energy(domain, chain.state())});
        }
      },
      plan.workers);
  std::vector<PairingSample> all;
  all.reserve(plan.samples);
  for (auto& v : per_chain) {
    for (auto& s : v) all.push_back(std::move(s));
  }
  return all;
}

std::map<PlanarPairing, double> exact_pairing_distribution(const FaceDomain& domain, const BoundaryConditions& bc,
                                                           IsingParams params, std::size_t workers) {
  const std::size_t nf = domain.face_count();
  if (nf > kMaxEnumerationFaces) {
    throw InvalidArgument("exact enumeration is capped at " + std::to_string(kMaxEnumerationFaces) + " faces");
  }
  const std::uint64_t total = std::uint64_t{1} << nf;
  const std::uint64_t block = std::min<std::uint64_t>(total, 4096);
  const std::size_t n_blocks = static_cast<std::size_t>(total / block);

  // lowest possible energy, used as a reference to keep weights bounded
  long ref = 0;
  for (std::size_t f = 0; f < nf; ++f) {
    for (const auto c : domain.neighbors(f)) {
      if (c >= static_cast<std::int32_t>(nf) || static_cast<std::size_t>(c) > f) --ref;
    }
  }

  std::vector<std::map<PlanarPairing, long double>> partial(n_blocks);
  parallel_for(
      n_blocks,
      [&](std::size_t b) {
        SpinConfiguration sigma(domain, bc);
        InterfaceTracer tracer(domain);
        auto& acc = partial[b];
        for (std::uint64_t k = b * block; k < (b + 1) * block; ++k) {
          for (std::size_t f = 0; f < nf; ++f) sigma.set_face_spin(f, ((k >> f) & 1U) ? 1 : -1);
          const double h = energy(domain, sigma);
          acc[tracer.pairing(sigma)] += std::exp(-static_cast<long double>(params.beta) * (h - ref));
        }
      },
      workers);

  std::map<PlanarPairing, long double> sum;
  long double z = 0.0L;
  for (const auto& m : partial) {
    for (const auto& [p, w] : m) {
      sum[p] += w;
      z += w;
    }
  }
  std::map<PlanarPairing, double> out;
  for (const auto& [p, w] : sum) out.emplace(p, static_cast<double>(w / z));
  return out;
}

}  // namespace msle
