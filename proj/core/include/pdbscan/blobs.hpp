#pragma once

#include <cstddef>
#include <cstdint>

#include "pdbscan/points.hpp"

namespace pdbscan {

/// Synthetic dataset: `clusters` isotropic Gaussian blobs (standard deviation
/// `spread`) whose centers sit on a cubic lattice with spacing
/// max(1, 10 * spread), plus uniform background noise over the lattice's
/// bounding box padded by half a spacing.
///
/// round(noise_fraction * n) points are noise, capped so every blob keeps at
/// least one point. Blob points come first, assigned round-robin to blobs;
/// noise points follow. The output is a pure function of the arguments.
///
/// Throws InvalidParams unless n >= clusters >= 1, spread >= 0 and
/// noise_fraction is in [0, 1].
PointSet generate_blobs(std::size_t n, std::size_t clusters, double spread, double noise_fraction,
                        std::uint64_t seed);

/// Lattice spacing used by generate_blobs for a given spread.
double blob_spacing(double spread) noexcept;

/// Rounds every coordinate to the nearest multiple of `step`.
///
/// With step = 2^-q and coordinates bounded by M, squared distances and the
/// expanded form |t|^2 + |p|^2 - 2 t.p are exact in 32-bit floats as long as
/// 6 M^2 < 2^(24 - 2q). Benchmarks rely on this to compare float kernels
/// against the 64-bit oracle without a tolerance band.
///
/// Throws InvalidParams unless step is finite and positive.
PointSet snap_to_grid(const PointSet& points, double step);

}  // namespace pdbscan
