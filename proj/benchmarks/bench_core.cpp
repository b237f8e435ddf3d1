#include <benchmark/benchmark.h>

#include "cpmetric/channel.hpp"
#include "cpmetric/linalg.hpp"
#include "cpmetric/metric.hpp"
#include "cpmetric/operator_geometry.hpp"
#include "cpmetric/random.hpp"

using namespace cpmetric;

static void BM_HermEig(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = trial_rng(1, n);
  const ComplexMatrix g = random_ginibre(rng, n, n);
  const ComplexMatrix h = g + g.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(h));
}
BENCHMARK(BM_HermEig)->Arg(4)->Arg(16)->Arg(64);

static void BM_DistToScalars(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = trial_rng(2, n);
  const ComplexMatrix t = random_ginibre(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(dist_to_scalars(t));
}
BENCHMARK(BM_DistToScalars)->Arg(2)->Arg(4)->Arg(8);

static void BM_DistToSubspace(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = trial_rng(3, n);
  const ComplexMatrix t = random_ginibre(rng, n, n);
  std::vector<ComplexMatrix> span;
  for (int k = 0; k < 3; ++k) span.push_back(random_ginibre(rng, n, n));
  const SubspaceBasis s(n, span);
  for (auto _ : state) benchmark::DoNotOptimize(dist_to_subspace(t, s));
}
BENCHMARK(BM_DistToSubspace)->Arg(2)->Arg(4)->Arg(8);

static void BM_BuresChannels(benchmark::State& state) {
  Rng rng = trial_rng(4, 0);
  const QuantumChannel a = random_ucp_channel(rng, 2, 2, 2), b = random_ucp_channel(rng, 2, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(bures_channels(a, b));
}
BENCHMARK(BM_BuresChannels)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
