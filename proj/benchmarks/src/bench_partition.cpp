#include <benchmark/benchmark.h>

#include "multisle/geometry.hpp"
#include "multisle/loewner.hpp"
#include "multisle/ode_reduction.hpp"
#include "multisle/partition.hpp"

namespace {

using namespace msle;

void BM_IsingZ(benchmark::State& state) {
  Rng rng(1);
  const auto config = random_config(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ising_Z(config));
}
BENCHMARK(BM_IsingZ)->DenseRange(1, 6);

void BM_GffZ(benchmark::State& state) {
  Rng rng(2);
  const auto config = random_config(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(gff_Z(config));
}
BENCHMARK(BM_GffZ)->DenseRange(1, 6);

void BM_PureZ(benchmark::State& state) {
  const KappaParams params(static_cast<double>(state.range(0)));
  const BoundaryConfig config({0.0, 0.7, 2.0, 3.1});
  benchmark::DoNotOptimize(pure_Z(params, config, pairing_alpha1()));
  for (auto _ : state) benchmark::DoNotOptimize(pure_Z(params, config, pairing_alpha1()));
}
BENCHMARK(BM_PureZ)->Arg(3)->Arg(4)->Arg(6);

void BM_PdeResidual(benchmark::State& state) {
  Rng rng(3);
  const auto config = random_config(static_cast<std::size_t>(state.range(0)), rng);
  const auto z = PartitionEvaluator::ising();
  for (auto _ : state) benchmark::DoNotOptimize(pde_residual(z, config, 0));
}
BENCHMARK(BM_PdeResidual)->DenseRange(1, 3);

void BM_LoewnerPath(benchmark::State& state) {
  const auto z = PartitionEvaluator::gff();
  const BoundaryConfig config({0, 1, 2, 3});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    NoiseSource noise(seed++);
    benchmark::DoNotOptimize(simulate(config, Localization::around(0, 0.4), z, 1e-4, noise, false));
  }
}
BENCHMARK(BM_LoewnerPath)->Unit(benchmark::kMicrosecond);

}  // namespace
