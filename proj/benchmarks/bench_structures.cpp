#include <benchmark/benchmark.h>

#include "homlab/fraisse.hpp"
#include "homlab/reducts.hpp"
#include "homlab/rigid.hpp"

using namespace homlab;

static void BM_CheckAP(benchmark::State& state) {
  const auto c = fraisse::ClassSpec::k_free_graphs(3);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fraisse::check_ap(c, n, false).instances);
}
BENCHMARK(BM_CheckAP)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

static void BM_LimitApproximation(benchmark::State& state) {
  const auto c = fraisse::ClassSpec::all_graphs();
  const int stages = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fraisse::limit_approximation(c, stages, 7).guaranteed_level);
}
BENCHMARK(BM_LimitApproximation)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ReductLattice(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reducts::reduct_lattice(n).chain);
}
BENCHMARK(BM_ReductLattice)->DenseRange(4, 7);

static void BM_TreeRoundTrip(benchmark::State& state) {
  const auto trees = rigid::all_trees(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (const auto& t : trees) benchmark::DoNotOptimize(rigid::tree_of_c_relation(rigid::c_relation_of_tree(t)));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * trees.size()));
}
BENCHMARK(BM_TreeRoundTrip)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

static void BM_PatternContains(benchmark::State& state) {
  const std::vector<int> p{2, 4, 1, 3};
  const std::vector<int> q{7, 2, 9, 4, 11, 1, 12, 5, 10, 3, 8, 6};
  for (auto _ : state) benchmark::DoNotOptimize(rigid::pattern_contains(p, q).found);
}
BENCHMARK(BM_PatternContains);
