#pragma once

#include <cstddef>
#include <vector>

#include "pdbscan/points.hpp"

namespace pdbscan {

/// Per-stage wall time of a serial_dbscan run, in milliseconds.
struct OracleTrace {
  double dist_sq_ms = 0.0;
  double cluster_build_ms = 0.0;
  double merge_ms = 0.0;
  std::size_t core_count = 0;

  double total_ms() const noexcept { return dist_sq_ms + cluster_build_ms + merge_ms; }
};

struct OracleResult {
  Labeling labeling;
  OracleTrace trace;
};

/// Textbook serial DBSCAN in 64-bit arithmetic, used as ground truth.
///
/// 1. squared distances, one full row at a time;
/// 2. neighborhoods (distSq <= eps_sq, self included) and core flags
///    (|neighborhood| >= min_pts);
/// 3. core points connected through chains of in-range cores share a
///    cluster; a non-core point takes the cluster of its lowest-indexed
///    in-range core, otherwise it is noise.
///
/// The labeling is canonical. Single-threaded.
OracleResult serial_dbscan(const PointSet& points, const DbscanParams& params);

/// {j : distSq(i, j) <= eps_sq}, ascending, always containing i.
/// Throws IndexOutOfRange when i >= points.size().
std::vector<std::size_t> brute_force_neighbors(const PointSet& points, std::size_t i,
                                               const DbscanParams& params);

/// 64-bit squared Euclidean distance, (dx^2 + dy^2) + dz^2.
double dist_sq64(const Point3& a, const Point3& b) noexcept;

}  // namespace pdbscan
