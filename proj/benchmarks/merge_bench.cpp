#include <benchmark/benchmark.h>

#include "pdbscan/pdbscan.hpp"

namespace {

using namespace pdbscan;

// Warshall is cubic in the number of core points, so sizes stay small here.
ClusterBuild build(std::size_t n) {
  const PointSet pts = snap_to_grid(generate_blobs(n, 8, 0.1, 0.05, 42), 0x1p-7);
  return fused_build(pts, validate_params(0.05, 10), {VariantId::kFused, 256, 32}, default_thread_count());
}

void BM_MergeIterative(benchmark::State& state) {
  const ClusterBuild b = build(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(merge_iterative(b.neighborhoods, b.valid, default_thread_count()));
  state.counters["cores"] = static_cast<double>(b.valid.live_count());
}
BENCHMARK(BM_MergeIterative)->Arg(2048)->Arg(5061)->Unit(benchmark::kMillisecond);

void BM_MergeWarshall(benchmark::State& state) {
  const ClusterBuild b = build(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(merge_warshall(b.neighborhoods, b.valid, default_thread_count()));
  state.counters["cores"] = static_cast<double>(b.valid.live_count());
}
BENCHMARK(BM_MergeWarshall)->Arg(2048)->Arg(5061)->Unit(benchmark::kMillisecond);

}  // namespace
