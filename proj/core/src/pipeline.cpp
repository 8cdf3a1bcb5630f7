#include "pdbscan/pipeline.hpp"

#include <omp.h>

#include <chrono>

#include "pdbscan/errors.hpp"
#include "pdbscan/merge.hpp"

namespace pdbscan {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

std::string_view to_string(MergeBackend backend) noexcept {
  return backend == MergeBackend::kIterative ? "iterative" : "warshall";
}

std::optional<MergeBackend> parse_merge_backend(std::string_view name) noexcept {
  if (name == "iterative") return MergeBackend::kIterative;
  if (name == "warshall") return MergeBackend::kWarshall;
  return std::nullopt;
}

std::size_t default_thread_count() noexcept {
  return static_cast<std::size_t>(std::max(1, omp_get_max_threads()));
}

PipelineResult run_dbscan(const PointSet& points, const DbscanParams& params,
                          const PipelineConfig& config) {
  validate_variant(config.variant);
  if (config.threads < 1) throw InvalidParams("threads", "must be at least 1");
  const std::size_t n = points.size();
  check_capacity(required_matrix_bytes(config.variant.id, n), config.memory_cap);

  PipelineResult result;
  StageTimings& timings = result.timings;
  const std::size_t threads = config.threads;
  const auto start = Clock::now();

  ClusterBuild build;
  if (materializes_distances(config.variant.id)) {
    auto stage = Clock::now();
    const DistSqMatrix dist = [&] {
      switch (config.variant.id) {
        case VariantId::kBaseline: return dist_baseline(points, threads, config.memory_cap);
        case VariantId::kSoa: return dist_soa(points, threads, config.memory_cap);
        default: return dist_tiled(points, config.variant, threads, config.memory_cap);
      }
    }();
    timings.dist_ms = elapsed_ms(stage);
    stage = Clock::now();
    build = build_clusters_from_dist(dist, params, threads, config.memory_cap);
    timings.cluster_ms = elapsed_ms(stage);
  } else {
    const auto stage = Clock::now();
    build = config.variant.id == VariantId::kFused
                ? fused_build(points, params, config.variant, threads, config.memory_cap)
                : fused_build_algebraic(points, params, config.variant, threads, config.memory_cap);
    timings.fused_ms = elapsed_ms(stage);
  }

  const auto merge_start = Clock::now();
  if (config.merge_backend == MergeBackend::kIterative) {
    result.labeling = merge_iterative(std::move(build.neighborhoods), build.valid, threads);
  } else {
    result.labeling = merge_warshall(build.neighborhoods, build.valid, threads);
  }
  timings.merge_ms = elapsed_ms(merge_start);
  timings.total_ms = elapsed_ms(start);
  return result;
}

std::optional<std::size_t> first_difference(const Labeling& a, const Labeling& b) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  const Labeling ca = canonicalize(a);
  const Labeling cb = canonicalize(b);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca.labels[i] != cb.labels[i]) return i;
  }
  return std::nullopt;
}

bool labelings_equivalent(const Labeling& a, const Labeling& b) {
  return !first_difference(a, b).has_value();
}

}  // namespace pdbscan
