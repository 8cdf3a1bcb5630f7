#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pdbscan/bit_matrix.hpp"
#include "pdbscan/memory.hpp"
#include "pdbscan/points.hpp"

namespace pdbscan {

/// Dense n x n matrix of 32-bit squared distances, row-major.
class DistSqMatrix {
 public:
  /// Storage is left uninitialized; kernels overwrite every entry.
  explicit DistSqMatrix(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  float at(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
  float& at(std::size_t i, std::size_t j) noexcept { return values_[i * n_ + j]; }
  std::span<float> row(std::size_t i) noexcept { return {values_.get() + i * n_, n_}; }
  std::span<const float> row(std::size_t i) const noexcept { return {values_.get() + i * n_, n_}; }
  std::span<const float> values() const noexcept { return {values_.get(), n_ * n_}; }

  /// Builds a matrix from explicit row-major values (size must be n * n).
  static DistSqMatrix from_values(std::size_t n, std::span<const float> values);

 private:
  std::size_t n_;
  std::unique_ptr<float[]> values_;
};

/// bits(i, j) == 1 iff point j lies in the eps-neighborhood of point i.
/// Row i is the primitive cluster of point i.
struct NeighborhoodMatrix {
  BitMatrix bits;
  std::vector<std::uint32_t> neighbor_count;

  std::size_t size() const noexcept { return bits.rows(); }
};

/// valid[i] == 1 iff point i is a core point (its primitive cluster is live).
struct ValidVector {
  std::vector<std::uint8_t> valid;

  std::size_t size() const noexcept { return valid.size(); }
  std::size_t live_count() const noexcept;
};

struct ClusterBuild {
  NeighborhoodMatrix neighborhoods;
  ValidVector valid;
};

/// The optimization ladder, in order.
enum class VariantId {
  kBaseline,        // one row per work item, point-major reads
  kSoa,             // coordinate-major contiguous reads
  kTiled,           // column tiles staged into a worker-local buffer
  kTiledUnrolled,   // tiles plus a fixed-width inner block
  kFused,           // distance and eps comparison in one pass, no distance matrix
  kFusedAlgebraic,  // fused, with row and column terms hoisted out of the inner loop
};

inline constexpr VariantId kAllVariants[] = {
    VariantId::kBaseline, VariantId::kSoa,   VariantId::kTiled,
    VariantId::kTiledUnrolled, VariantId::kFused, VariantId::kFusedAlgebraic};

std::string_view to_string(VariantId id) noexcept;
/// Accepts the lower-case names used by the CLI ("baseline", "tiled_unrolled", ...).
std::optional<VariantId> parse_variant(std::string_view name) noexcept;

/// True for variants that materialize the n x n distance matrix.
constexpr bool materializes_distances(VariantId id) noexcept {
  return id != VariantId::kFused && id != VariantId::kFusedAlgebraic;
}

struct KernelVariant {
  VariantId id = VariantId::kFusedAlgebraic;
  std::size_t tile_size = 256;
  std::size_t unroll_width = 32;
};

/// Throws InvalidParams unless tile_size >= unroll_width >= 1.
void validate_variant(const KernelVariant& variant);

/// Matrix bytes the variant allocates for n points (distance matrix if
/// materialized, plus the bit matrix).
std::uint64_t required_matrix_bytes(VariantId id, std::size_t n) noexcept;

// Stage 1: distance ladder. All four produce bitwise-identical matrices.
// Each throws CapacityExceeded when the n x n float matrix exceeds memory_cap.

DistSqMatrix dist_baseline(const PointSet& points, std::size_t threads,
                           std::uint64_t memory_cap = matrix_cap_from_env());
DistSqMatrix dist_soa(const PointSet& points, std::size_t threads,
                      std::uint64_t memory_cap = matrix_cap_from_env());
/// variant.id must be kTiled or kTiledUnrolled (InvalidParams otherwise).
DistSqMatrix dist_tiled(const PointSet& points, const KernelVariant& variant, std::size_t threads,
                        std::uint64_t memory_cap = matrix_cap_from_env());

// Stage 2.

ClusterBuild build_clusters_from_dist(const DistSqMatrix& dist, const DbscanParams& params,
                                      std::size_t threads,
                                      std::uint64_t memory_cap = matrix_cap_from_env());

/// Same result as build_clusters_from_dist(dist_tiled(points)) without the
/// distance matrix. variant.id must be kFused.
ClusterBuild fused_build(const PointSet& points, const DbscanParams& params,
                         const KernelVariant& variant, std::size_t threads,
                         std::uint64_t memory_cap = matrix_cap_from_env());

/// Fused build evaluating P[n] - (X px + Y py + Z pz) <= eps^2 - T, where per
/// row T = |t|^2 and (X, Y, Z) = 2t, and per staged column P[n] = |p[n]|^2.
/// Rounding differs from the direct formula, so results match fused_build
/// only for pairs whose squared distance is not within rounding of eps^2.
/// variant.id must be kFusedAlgebraic.
ClusterBuild fused_build_algebraic(const PointSet& points, const DbscanParams& params,
                                   const KernelVariant& variant, std::size_t threads,
                                   std::uint64_t memory_cap = matrix_cap_from_env());

enum class DistanceFormula { kDirect, kAlgebraicInner };

/// Floating-point operations per inner-loop distance evaluation, measured by
/// running the kernels' own expression templates on a counting scalar type.
std::size_t flop_count(DistanceFormula formula);

}  // namespace pdbscan
