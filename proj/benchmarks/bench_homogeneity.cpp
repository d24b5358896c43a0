#include <benchmark/benchmark.h>

#include "homlab/enumerate.hpp"
#include "homlab/graph.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/isomorphism.hpp"

using namespace homlab;

static void BM_IsHomogeneousCycle(benchmark::State& state) {
  const FiniteGraph g = graphs::cycle(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(homog::is_homogeneous(g).holds);
}
BENCHMARK(BM_IsHomogeneousCycle)->Arg(5)->Arg(8)->Arg(12)->Arg(16);

static void BM_TupleRegularSchlafli(benchmark::State& state) {
  const FiniteGraph g = homog::schlafli_graph();
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(homog::is_t_tuple_regular(g, t).holds);
}
BENCHMARK(BM_TupleRegularSchlafli)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_SchlafliOrbits(benchmark::State& state) {
  const FiniteGraph g = homog::schlafli_graph();
  for (auto _ : state) benchmark::DoNotOptimize(orbits_on_ktuples(g, 4).count());
}
BENCHMARK(BM_SchlafliOrbits)->Unit(benchmark::kMillisecond);

static void BM_SpectralSignature(benchmark::State& state) {
  const FiniteGraph g = graphs::petersen();
  for (auto _ : state) benchmark::DoNotOptimize(homog::spectral_signature(g));
}
BENCHMARK(BM_SpectralSignature);

static void BM_CanonicalCode(benchmark::State& state) {
  const FiniteGraph g = graphs::cycle(12);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_code(g));
}
BENCHMARK(BM_CanonicalCode)->Unit(benchmark::kMicrosecond);

static void BM_EnumerateGraphs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(graphs_up_to_isomorphism(n).size());
}
BENCHMARK(BM_EnumerateGraphs)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);
