#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pdbscan/bit_matrix.hpp"
#include "pdbscan/kernels.hpp"
#include "pdbscan/points.hpp"

namespace pdbscan {

/// Mutable cluster matrix and valid vector during merging. Bits only go
/// 0 -> 1 and valid flags only go 1 -> 0.
struct MergeState {
  BitMatrix bits;
  std::vector<std::uint8_t> valid;
};

/// Called after every merge pass (at the barrier), with the target row of the
/// pass. For auditing; must not modify the state.
using MergeObserver = std::function<void(const MergeState& state, std::size_t target)>;

/// Merges primitive clusters into final clusters by target merging.
///
/// Targets are visited in ascending point order. For a live target t, every
/// other live cluster i is tested concurrently; if bit (t, i) is set (both are
/// core points, so they are density-reachable) row i is OR-ed into row t and
/// i is retired. Passes over the same target repeat until one merges nothing,
/// which closes chains. Core points take the id of the surviving row that
/// absorbed them; non-core points take the cluster of their lowest-indexed
/// in-range core, or noise. Output is canonical.
///
/// Throws InconsistentInput if neighbor counts disagree with the rows, or if
/// no single threshold separates valid from invalid counts.
Labeling merge_iterative(NeighborhoodMatrix neighborhoods, const ValidVector& valid,
                         std::size_t threads, const MergeObserver& observer = {});

/// Core-restricted neighborhood relation.
struct CoreAdjacency {
  std::vector<std::size_t> core_points;  // rank -> point index, ascending
  BitMatrix adj;                         // m x m

  std::size_t size() const noexcept { return core_points.size(); }
};

CoreAdjacency build_core_adjacency(const NeighborhoodMatrix& neighborhoods, const ValidVector& valid);

/// Transitive closure by Warshall's recurrence: for each pivot k, every row a
/// with adj(a, k) set gains row k. Rows are processed in parallel within a
/// pivot, with a barrier between pivots. Precondition: adj symmetric and
/// reflexive.
CoreAdjacency warshall_closure(CoreAdjacency adj, std::size_t threads);

/// Clusters are the equivalence classes of the closed core relation; border
/// points attach as in merge_iterative. Output is canonical.
Labeling merge_warshall(const NeighborhoodMatrix& neighborhoods, const ValidVector& valid,
                        std::size_t threads);

}  // namespace pdbscan
