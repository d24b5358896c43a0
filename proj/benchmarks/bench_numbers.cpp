#include <benchmark/benchmark.h>

#include "homlab/rado.hpp"
#include "homlab/sumfree.hpp"

using namespace homlab;

static void BM_SumFreeCensus(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sumfree::census(n).total);
}
BENCHMARK(BM_SumFreeCensus)->DenseRange(24, 36, 4)->Unit(benchmark::kMillisecond);

static void BM_RandomSumFree(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sumfree::random_sum_free(seed++, n).elements.size());
}
BENCHMARK(BM_RandomSumFree)->Arg(500)->Arg(2000)->Unit(benchmark::kMicrosecond);

static void BM_DensityExperimentWorkers(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sumfree::density_experiment(2000, 2000, 7, 0.01, workers).no_even_trials);
}
BENCHMARK(BM_DensityExperimentWorkers)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ExtensionWitness(benchmark::State& state) {
  const rado::BitOracle o;
  const std::vector<rado::Vertex> u{0, 2, 4, 6, 8};
  const std::vector<rado::Vertex> v{1, 3, 5, 7, 9};
  for (auto _ : state) benchmark::DoNotOptimize(rado::extension_witness(o, u, v, 1 << 16));
}
BENCHMARK(BM_ExtensionWitness);

static void BM_PrimeAdjacency(benchmark::State& state) {
  const rado::PrimeOracle o(100000);
  for (auto _ : state) benchmark::DoNotOptimize(o.adjacent(99989, 99961));
}
BENCHMARK(BM_PrimeAdjacency);
