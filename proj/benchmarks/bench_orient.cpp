#include <benchmark/benchmark.h>

#include "trailorient/connectivity.hpp"
#include "trailorient/generators.hpp"
#include "trailorient/linear.hpp"
#include "trailorient/naive.hpp"
#include "trailorient/oracle.hpp"

using namespace trailorient;

namespace {

Instance cubic_instance(std::int64_t n) {
  Rng rng(1000003ULL + static_cast<std::uint64_t>(n));
  Instance inst;
  inst.graph = random_cubic(static_cast<VertexId>(n), rng);
  inst.trails = random_trails(inst.graph, rng);
  return inst;
}

Instance sparse_instance(std::int64_t n) {
  Rng rng(2000003ULL + static_cast<std::uint64_t>(n));
  Instance inst;
  inst.graph = random_two_edge_connected(static_cast<VertexId>(n), static_cast<EdgeId>(2 * n), rng, true);
  inst.trails = random_trails(inst.graph, rng);
  return inst;
}

void set_edges(benchmark::State& state, const MultiGraph& g) {
  state.SetItemsProcessed(state.iterations() * g.edge_count());
  state.counters["edges"] = static_cast<double>(g.edge_count());
}

void BM_OrientLinearCubic(benchmark::State& state) {
  const auto inst = cubic_instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(orient_linear(inst.graph, inst.trails));
  set_edges(state, inst.graph);
}
BENCHMARK(BM_OrientLinearCubic)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

void BM_OrientLinearSparse(benchmark::State& state) {
  const auto inst = sparse_instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(orient_linear(inst.graph, inst.trails));
  set_edges(state, inst.graph);
}
BENCHMARK(BM_OrientLinearSparse)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

void BM_OrientNaiveCubic(benchmark::State& state) {
  const auto inst = cubic_instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(orient_trails(inst.graph, inst.trails));
  set_edges(state, inst.graph);
}
BENCHMARK(BM_OrientNaiveCubic)->RangeMultiplier(4)->Range(100, 1600)->Unit(benchmark::kMillisecond);

void BM_ReduceToCubic(benchmark::State& state) {
  const auto inst = sparse_instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reduce_to_cubic(inst.graph, inst.trails));
  set_edges(state, inst.graph);
}
BENCHMARK(BM_ReduceToCubic)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

void BM_ThreeEdgeComponents(benchmark::State& state) {
  const auto inst = cubic_instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(three_edge_components(inst.graph));
  set_edges(state, inst.graph);
}
BENCHMARK(BM_ThreeEdgeComponents)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  const auto inst = cubic_instance(state.range(0));
  const auto o = orient_linear(inst.graph, inst.trails);
  for (auto _ : state) benchmark::DoNotOptimize(verify(inst.graph, inst.trails, *o));
  set_edges(state, inst.graph);
}
BENCHMARK(BM_Verify)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
