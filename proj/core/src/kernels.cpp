#include "pdbscan/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <type_traits>

#include "pdbscan/distance_expr.hpp"
#include "pdbscan/errors.hpp"

namespace pdbscan {
namespace {

struct RowRange {
  std::size_t begin;
  std::size_t end;
};

// Contiguous block of rows owned by the calling OpenMP worker.
RowRange worker_rows(std::size_t n) {
  const auto w = static_cast<std::size_t>(omp_get_thread_num());
  const auto nw = static_cast<std::size_t>(omp_get_num_threads());
  return {n * w / nw, n * (w + 1) / nw};
}

int team_size(std::size_t threads) {
  return static_cast<int>(std::clamp<std::size_t>(threads, 1, 4096));
}

inline float narrow(double v) { return static_cast<float>(v); }

// Largest float not above eps_sq, so that for any float d,
// d <= threshold  <=>  double(d) <= eps_sq.
float float_threshold(double eps_sq) {
  float f = static_cast<float>(eps_sq);
  if (static_cast<double>(f) > eps_sq) f = std::nextafter(f, -std::numeric_limits<float>::infinity());
  return f;
}

// Worker-local copy of a block of columns (the shared-memory analogue).
struct Tile {
  explicit Tile(std::size_t capacity, bool with_norms)
      : x(capacity), y(capacity), z(capacity), p(with_norms ? capacity : 0) {}

  void stage(const PointSet& points, std::size_t first, std::size_t count) {
    begin = first;
    len = count;
    const auto xs = points.xs();
    const auto ys = points.ys();
    const auto zs = points.zs();
    for (std::size_t k = 0; k < count; ++k) {
      x[k] = narrow(xs[first + k]);
      y[k] = narrow(ys[first + k]);
      z[k] = narrow(zs[first + k]);
    }
    if (!p.empty()) {
      for (std::size_t k = 0; k < count; ++k) p[k] = detail::norm_sq(x[k], y[k], z[k]);
    }
  }

  std::vector<float> x, y, z, p;
  std::size_t begin = 0;
  std::size_t len = 0;
};

// out[k] = eval(k) for k in [0, len). With W > 0 (compile-time) or width > 1
// (runtime) the loop runs in fixed blocks followed by a scalar epilogue.
template <std::size_t W, typename T, typename Eval>
inline void blocked_fill(T* __restrict out, std::size_t len, std::size_t width, const Eval& eval) {
  std::size_t k = 0;
  if constexpr (W > 0) {
    for (; k + W <= len; k += W) {
      for (std::size_t u = 0; u < W; ++u) out[k + u] = eval(k + u);
    }
  } else if (width > 1) {
    for (; k + width <= len; k += width) {
      for (std::size_t u = 0; u < width; ++u) out[k + u] = eval(k + u);
    }
  }
  for (; k < len; ++k) out[k] = eval(k);
}

template <std::size_t W>
using Width = std::integral_constant<std::size_t, W>;

// Calls fn(Width<W>{}, width) with a compile-time block width for common
// unroll factors, Width<0> otherwise.
template <typename Fn>
void with_unroll(std::size_t width, Fn&& fn) {
  switch (width) {
    case 4: return fn(Width<4>{}, width);
    case 8: return fn(Width<8>{}, width);
    case 16: return fn(Width<16>{}, width);
    case 32: return fn(Width<32>{}, width);
    case 64: return fn(Width<64>{}, width);
    default: return fn(Width<0>{}, width);
  }
}

void require_variant(const KernelVariant& variant, std::initializer_list<VariantId> allowed,
                     const char* op) {
  validate_variant(variant);
  if (std::find(allowed.begin(), allowed.end(), variant.id) == allowed.end()) {
    throw InvalidParams("variant", std::string(to_string(variant.id)) + " is not accepted by " + op);
  }
}

ClusterBuild empty_build(std::size_t n) {
  ClusterBuild out;
  out.neighborhoods.bits = BitMatrix(n, n);
  out.neighborhoods.neighbor_count.assign(n, 0);
  out.valid.valid.assign(n, 0);
  return out;
}

void finish_row(ClusterBuild& out, std::size_t i, std::size_t min_pts) {
  const std::size_t count = out.neighborhoods.bits.row_popcount(i);
  out.neighborhoods.neighbor_count[i] = static_cast<std::uint32_t>(count);
  out.valid.valid[i] = count >= min_pts ? 1 : 0;
}

template <bool Algebraic>
ClusterBuild fused_impl(const PointSet& points, const DbscanParams& params,
                        const KernelVariant& variant, std::size_t threads, std::uint64_t memory_cap) {
  const std::size_t n = points.size();
  check_capacity(neighborhood_matrix_bytes(n), memory_cap);
  ClusterBuild out = empty_build(n);
  const float eps_f = float_threshold(params.eps_sq());
  const std::size_t tile_size = variant.tile_size;
  const auto aos = points.aos();

  with_unroll(variant.unroll_width, [&](auto w, std::size_t width) {
    constexpr std::size_t W = decltype(w)::value;
#pragma omp parallel num_threads(team_size(threads))
    {
      const RowRange rows = worker_rows(n);
      Tile tile(tile_size, Algebraic);
      std::vector<std::uint8_t> hits(tile_size);
      for (std::size_t first = 0; first < n && rows.begin < rows.end; first += tile_size) {
        tile.stage(points, first, std::min(tile_size, n - first));
        const float* __restrict px = tile.x.data();
        const float* __restrict py = tile.y.data();
        const float* __restrict pz = tile.z.data();
        for (std::size_t i = rows.begin; i < rows.end; ++i) {
          const float tx = narrow(aos[i].x);
          const float ty = narrow(aos[i].y);
          const float tz = narrow(aos[i].z);
          if constexpr (Algebraic) {
            const float* __restrict pn = tile.p.data();
            const float row_norm = detail::norm_sq(tx, ty, tz);
            const float x2 = 2.0f * tx;
            const float y2 = 2.0f * ty;
            const float z2 = 2.0f * tz;
            const float limit = eps_f - row_norm;
            blocked_fill<W>(hits.data(), tile.len, width, [=](std::size_t k) {
              return static_cast<std::uint8_t>(
                  detail::algebraic_lhs(pn[k], x2, y2, z2, px[k], py[k], pz[k]) <= limit);
            });
          } else {
            blocked_fill<W>(hits.data(), tile.len, width, [=](std::size_t k) {
              return static_cast<std::uint8_t>(
                  detail::direct_dist_sq(tx, ty, tz, px[k], py[k], pz[k]) <= eps_f);
            });
          }
          pack_hits(out.neighborhoods.bits.row_bytes(i), tile.begin,
                    std::span<const std::uint8_t>(hits.data(), tile.len));
        }
      }
      for (std::size_t i = rows.begin; i < rows.end; ++i) finish_row(out, i, params.min_pts());
    }
  });
  return out;
}

// Counts +, -, * executed on it.
struct CountedFloat {
  float v;
  static inline thread_local std::size_t ops = 0;

  friend CountedFloat operator+(CountedFloat a, CountedFloat b) { ++ops; return {a.v + b.v}; }
  friend CountedFloat operator-(CountedFloat a, CountedFloat b) { ++ops; return {a.v - b.v}; }
  friend CountedFloat operator*(CountedFloat a, CountedFloat b) { ++ops; return {a.v * b.v}; }
};

}  // namespace

DistSqMatrix::DistSqMatrix(std::size_t n)
    : n_(n), values_(std::make_unique_for_overwrite<float[]>(n * n)) {}

DistSqMatrix DistSqMatrix::from_values(std::size_t n, std::span<const float> values) {
  if (values.size() != n * n) throw InvalidParams("values", "expected n * n entries");
  DistSqMatrix m(n);
  std::copy(values.begin(), values.end(), m.values_.get());
  return m;
}

std::size_t ValidVector::live_count() const noexcept {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), std::uint8_t{1}));
}

std::string_view to_string(VariantId id) noexcept {
  switch (id) {
    case VariantId::kBaseline: return "baseline";
    case VariantId::kSoa: return "soa";
    case VariantId::kTiled: return "tiled";
    case VariantId::kTiledUnrolled: return "tiled_unrolled";
    case VariantId::kFused: return "fused";
    case VariantId::kFusedAlgebraic: return "fused_algebraic";
  }
  return "unknown";
}

std::optional<VariantId> parse_variant(std::string_view name) noexcept {
  for (VariantId id : kAllVariants) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

void validate_variant(const KernelVariant& variant) {
  if (variant.unroll_width < 1) throw InvalidParams("unroll_width", "must be at least 1");
  if (variant.tile_size < variant.unroll_width) {
    throw InvalidParams("tile_size", "must be at least unroll_width");
  }
}

std::uint64_t required_matrix_bytes(VariantId id, std::size_t n) noexcept {
  const std::uint64_t bits = neighborhood_matrix_bytes(n);
  return materializes_distances(id) ? dist_matrix_bytes(n) + bits : bits;
}

DistSqMatrix dist_baseline(const PointSet& points, std::size_t threads, std::uint64_t memory_cap) {
  const std::size_t n = points.size();
  check_capacity(dist_matrix_bytes(n), memory_cap);
  DistSqMatrix out(n);
  const auto aos = points.aos();
#pragma omp parallel num_threads(team_size(threads))
  {
    const RowRange rows = worker_rows(n);
    for (std::size_t i = rows.begin; i < rows.end; ++i) {
      float* row = out.row(i).data();
      for (std::size_t j = 0; j < n; ++j) {
        row[j] = detail::direct_dist_sq(narrow(aos[i].x), narrow(aos[i].y), narrow(aos[i].z),
                                        narrow(aos[j].x), narrow(aos[j].y), narrow(aos[j].z));
      }
    }
  }
  return out;
}

DistSqMatrix dist_soa(const PointSet& points, std::size_t threads, std::uint64_t memory_cap) {
  const std::size_t n = points.size();
  check_capacity(dist_matrix_bytes(n), memory_cap);
  DistSqMatrix out(n);
  const double* __restrict xs = points.xs().data();
  const double* __restrict ys = points.ys().data();
  const double* __restrict zs = points.zs().data();
#pragma omp parallel num_threads(team_size(threads))
  {
    const RowRange rows = worker_rows(n);
    for (std::size_t i = rows.begin; i < rows.end; ++i) {
      float* __restrict row = out.row(i).data();
      const float tx = narrow(xs[i]);
      const float ty = narrow(ys[i]);
      const float tz = narrow(zs[i]);
      for (std::size_t j = 0; j < n; ++j) {
        row[j] = detail::direct_dist_sq(tx, ty, tz, narrow(xs[j]), narrow(ys[j]), narrow(zs[j]));
      }
    }
  }
  return out;
}

DistSqMatrix dist_tiled(const PointSet& points, const KernelVariant& variant, std::size_t threads,
                        std::uint64_t memory_cap) {
  require_variant(variant, {VariantId::kTiled, VariantId::kTiledUnrolled}, "dist_tiled");
  const std::size_t n = points.size();
  check_capacity(dist_matrix_bytes(n), memory_cap);
  DistSqMatrix out(n);
  const auto aos = points.aos();
  const std::size_t tile_size = variant.tile_size;
  const std::size_t unroll = variant.id == VariantId::kTiledUnrolled ? variant.unroll_width : 1;

  with_unroll(unroll, [&](auto w, std::size_t width) {
    constexpr std::size_t W = decltype(w)::value;
#pragma omp parallel num_threads(team_size(threads))
    {
      const RowRange rows = worker_rows(n);
      Tile tile(tile_size, false);
      for (std::size_t first = 0; first < n && rows.begin < rows.end; first += tile_size) {
        tile.stage(points, first, std::min(tile_size, n - first));
        const float* __restrict px = tile.x.data();
        const float* __restrict py = tile.y.data();
        const float* __restrict pz = tile.z.data();
        for (std::size_t i = rows.begin; i < rows.end; ++i) {
          const float tx = narrow(aos[i].x);
          const float ty = narrow(aos[i].y);
          const float tz = narrow(aos[i].z);
          blocked_fill<W>(out.row(i).data() + tile.begin, tile.len, width, [=](std::size_t k) {
            return detail::direct_dist_sq(tx, ty, tz, px[k], py[k], pz[k]);
          });
        }
      }
    }
  });
  return out;
}

ClusterBuild build_clusters_from_dist(const DistSqMatrix& dist, const DbscanParams& params,
                                      std::size_t threads, std::uint64_t memory_cap) {
  const std::size_t n = dist.size();
  check_capacity(neighborhood_matrix_bytes(n), memory_cap);
  ClusterBuild out = empty_build(n);
  const float eps_f = float_threshold(params.eps_sq());
#pragma omp parallel num_threads(team_size(threads))
  {
    const RowRange rows = worker_rows(n);
    std::vector<std::uint8_t> hits(n);
    for (std::size_t i = rows.begin; i < rows.end; ++i) {
      const float* __restrict row = dist.row(i).data();
      for (std::size_t j = 0; j < n; ++j) hits[j] = static_cast<std::uint8_t>(row[j] <= eps_f);
      pack_hits(out.neighborhoods.bits.row_bytes(i), 0, hits);
      finish_row(out, i, params.min_pts());
    }
  }
  return out;
}

ClusterBuild fused_build(const PointSet& points, const DbscanParams& params,
                         const KernelVariant& variant, std::size_t threads, std::uint64_t memory_cap) {
  require_variant(variant, {VariantId::kFused}, "fused_build");
  return fused_impl<false>(points, params, variant, threads, memory_cap);
}

ClusterBuild fused_build_algebraic(const PointSet& points, const DbscanParams& params,
                                   const KernelVariant& variant, std::size_t threads,
                                   std::uint64_t memory_cap) {
  require_variant(variant, {VariantId::kFusedAlgebraic}, "fused_build_algebraic");
  return fused_impl<true>(points, params, variant, threads, memory_cap);
}

std::size_t flop_count(DistanceFormula formula) {
  // One arbitrary pair; the count does not depend on the values.
  const CountedFloat tx{0.25f}, ty{-1.5f}, tz{2.0f};
  const CountedFloat px{3.0f}, py{0.5f}, pz{-0.75f};
  CountedFloat::ops = 0;
  if (formula == DistanceFormula::kDirect) {
    [[maybe_unused]] auto d = detail::direct_dist_sq(tx, ty, tz, px, py, pz);
    return CountedFloat::ops;
  }
  // Row terms (2t) and the column norm are hoisted; count only the inner expression.
  const CountedFloat x2{2.0f * tx.v}, y2{2.0f * ty.v}, z2{2.0f * tz.v};
  const CountedFloat p_norm{px.v * px.v + py.v * py.v + pz.v * pz.v};
  CountedFloat::ops = 0;
  [[maybe_unused]] auto lhs = detail::algebraic_lhs(p_norm, x2, y2, z2, px, py, pz);
  return CountedFloat::ops;
}

}  // namespace pdbscan
