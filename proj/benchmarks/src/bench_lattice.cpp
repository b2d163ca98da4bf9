#include <benchmark/benchmark.h>

#include "multisle/explorer.hpp"
#include "multisle/ising.hpp"
#include "multisle/tracer.hpp"

namespace {

using namespace msle;

void BM_GlauberSweep(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto domain = FaceDomain::rectangle(side, side, FaceDomain::corner_marks(side, side));
  GlauberChain chain(domain, alternating_boundary_conditions(domain), IsingParams{}, 7);
  for (auto _ : state) chain.sweep();
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(domain.face_count()));
}
BENCHMARK(BM_GlauberSweep)->Arg(16)->Arg(64)->Arg(128);

void BM_TracePairing(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto domain = FaceDomain::rectangle(side, side, FaceDomain::corner_marks(side, side));
  GlauberChain chain(domain, alternating_boundary_conditions(domain), IsingParams{}, 8);
  chain.run(200);
  InterfaceTracer tracer(domain);
  for (auto _ : state) benchmark::DoNotOptimize(tracer.pairing(chain.state()));
}
BENCHMARK(BM_TracePairing)->Arg(16)->Arg(64)->Arg(128);

void BM_ExplorerRun(benchmark::State& state) {
  const auto domain = HexDomain::rectangle(29.4, 58.8);
  const ExplorerOptions options{Schedule::RoundRobin, state.range(0) ? HittingSampler::Walk : HittingSampler::Dirichlet};
  Rng rng(9);
  for (auto _ : state) benchmark::DoNotOptimize(run_explorer(domain, rng, options).pairing);
}
BENCHMARK(BM_ExplorerRun)->ArgName("walk")->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_HittingProbability(benchmark::State& state) {
  const auto domain = HexDomain::disc(static_cast<int>(state.range(0)), {0, 6, 12, 18});
  const auto coloring = domain.initial_coloring();
  std::size_t centre = 0;
  while (domain.on_loop(centre)) ++centre;
  for (auto _ : state) benchmark::DoNotOptimize(black_hitting_probability(domain, coloring, centre));
}
BENCHMARK(BM_HittingProbability)->Arg(5)->Arg(15)->Arg(25)->Unit(benchmark::kMicrosecond);

}  // namespace
