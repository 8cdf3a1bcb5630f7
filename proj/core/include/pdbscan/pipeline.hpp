#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "pdbscan/kernels.hpp"
#include "pdbscan/memory.hpp"
#include "pdbscan/points.hpp"

namespace pdbscan {

enum class MergeBackend { kIterative, kWarshall };

inline constexpr MergeBackend kAllMergeBackends[] = {MergeBackend::kIterative, MergeBackend::kWarshall};

std::string_view to_string(MergeBackend backend) noexcept;
std::optional<MergeBackend> parse_merge_backend(std::string_view name) noexcept;

/// Worker count used when none is given: the OpenMP default team size.
std::size_t default_thread_count() noexcept;

struct PipelineConfig {
  KernelVariant variant{};
  MergeBackend merge_backend = MergeBackend::kIterative;
  std::size_t threads = default_thread_count();
  std::uint64_t memory_cap = kDefaultMatrixCapBytes;
};

/// Wall time per stage in milliseconds. dist/cluster are set for
/// materializing variants, fused for the fused ones.
struct StageTimings {
  std::optional<double> dist_ms;
  std::optional<double> cluster_ms;
  std::optional<double> fused_ms;
  double merge_ms = 0.0;
  double total_ms = 0.0;

  /// Distance plus neighborhood construction, however it was executed.
  double build_ms() const noexcept {
    return fused_ms ? *fused_ms : dist_ms.value_or(0.0) + cluster_ms.value_or(0.0);
  }
};

struct PipelineResult {
  Labeling labeling;
  StageTimings timings;
};

/// Runs the configured variant and merge backend. Checks the whole matrix
/// budget up front; throws CapacityExceeded or InvalidParams. The labeling is
/// canonical.
PipelineResult run_dbscan(const PointSet& points, const DbscanParams& params,
                          const PipelineConfig& config);

/// canonicalize(a) == canonicalize(b). Throws LengthMismatch.
bool labelings_equivalent(const Labeling& a, const Labeling& b);

/// Index of the first point whose canonical labels differ, if any.
/// Throws LengthMismatch.
std::optional<std::size_t> first_difference(const Labeling& a, const Labeling& b);

}  // namespace pdbscan
