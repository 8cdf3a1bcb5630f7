#pragma once

// Inner-loop expressions shared by the kernels and by flop_count, which runs
// them on a counting scalar type. Keep them as the single source of truth.

namespace pdbscan::detail {

template <typename F>
inline F direct_dist_sq(F tx, F ty, F tz, F px, F py, F pz) {
  const F dx = tx - px;
  const F dy = ty - py;
  const F dz = tz - pz;
  return dx * dx + dy * dy + dz * dz;
}

template <typename F>
inline F norm_sq(F x, F y, F z) {
  return x * x + y * y + z * z;
}

/// P[n] - (X px + Y py + Z pz); compared against the hoisted eps^2 - T.
template <typename F>
inline F algebraic_lhs(F p_norm, F x2, F y2, F z2, F px, F py, F pz) {
  return p_norm - (x2 * px + y2 * py + z2 * pz);
}

}  // namespace pdbscan::detail
