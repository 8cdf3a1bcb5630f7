#include "pdbscan/merge.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>

#include "pdbscan/errors.hpp"

namespace pdbscan {
namespace {

int team_size(std::size_t threads) {
  return static_cast<int>(std::clamp<std::size_t>(threads, 1, 4096));
}

void check_consistent(const NeighborhoodMatrix& nb, const ValidVector& valid) {
  const std::size_t n = nb.size();
  if (nb.bits.cols() != n || nb.neighbor_count.size() != n || valid.size() != n) {
    throw InconsistentInput("neighborhood matrix, counts and valid vector differ in size");
  }
  std::uint32_t max_invalid = 0;
  std::uint32_t min_valid = std::numeric_limits<std::uint32_t>::max();
  for (std::size_t i = 0; i < n; ++i) {
    if (nb.bits.row_popcount(i) != nb.neighbor_count[i]) {
      throw InconsistentInput("neighbor_count of row " + std::to_string(i) + " disagrees with its bits");
    }
    if (valid.valid[i]) {
      min_valid = std::min(min_valid, nb.neighbor_count[i]);
    } else {
      max_invalid = std::max(max_invalid, nb.neighbor_count[i]);
    }
  }
  if (min_valid != std::numeric_limits<std::uint32_t>::max() && min_valid <= max_invalid) {
    throw InconsistentInput("valid vector is not a threshold on neighbor counts");
  }
}

// Non-core point p joins the cluster of its lowest-indexed in-range core.
// Row p of a non-core point is never merged into, so it still holds p's
// original neighborhood.
template <typename CoreLabel>
void attach_border_points(const BitMatrix& bits, std::span<const std::uint8_t> is_core,
                          std::vector<std::int32_t>& labels, CoreLabel&& core_label) {
  const std::size_t n = bits.rows();
  for (std::size_t p = 0; p < n; ++p) {
    if (is_core[p]) continue;
    const auto row = bits.row(p);
    for (std::size_t w = 0; w < row.size(); ++w) {
      BitMatrix::Word word = row[w];
      bool found = false;
      while (word != 0) {
        const std::size_t q = w * BitMatrix::kWordBits + static_cast<std::size_t>(std::countr_zero(word));
        if (is_core[q]) {
          labels[p] = core_label(q);
          found = true;
          break;
        }
        word &= word - 1;
      }
      if (found) break;
    }
  }
}

}  // namespace

Labeling merge_iterative(NeighborhoodMatrix neighborhoods, const ValidVector& valid,
                         std::size_t threads, const MergeObserver& observer) {
  check_consistent(neighborhoods, valid);
  const std::size_t n = neighborhoods.size();
  MergeState state{std::move(neighborhoods.bits), valid.valid};
  const std::vector<std::uint8_t> is_core = valid.valid;
  std::vector<std::size_t> absorbed_by(n);
  for (std::size_t i = 0; i < n; ++i) absorbed_by[i] = i;

  const std::size_t stride = state.bits.words_per_row();
  BitMatrix::Word* words = state.bits.words().data();
  std::uint8_t* live = state.valid.data();

  for (std::size_t t = 0; t < n; ++t) {
    if (!live[t]) continue;
    BitMatrix::Word* target_row = words + t * stride;
    bool merged = true;
    while (merged) {
      merged = false;
      // Sources are OR-ed into the target concurrently. OR never clears a bit
      // and each source row is read-only here, so the fixpoint is the same
      // regardless of interleaving.
#pragma omp parallel for num_threads(team_size(threads)) schedule(static) reduction(|| : merged)
      for (std::size_t i = 0; i < n; ++i) {
        if (i == t || !live[i]) continue;
        const BitMatrix::Word word =
            std::atomic_ref<BitMatrix::Word>(target_row[i / BitMatrix::kWordBits]).load(std::memory_order_relaxed);
        if (((word >> (i % BitMatrix::kWordBits)) & 1) == 0) continue;
        const BitMatrix::Word* source_row = words + i * stride;
        for (std::size_t w = 0; w < stride; ++w) {
          if (source_row[w] != 0) {
            std::atomic_ref<BitMatrix::Word>(target_row[w]).fetch_or(source_row[w], std::memory_order_relaxed);
          }
        }
        live[i] = 0;
        absorbed_by[i] = t;
        merged = true;
      }
      if (observer) observer(state, t);
    }
  }

  std::vector<std::int32_t> labels(n, kNoise);
  for (std::size_t p = 0; p < n; ++p) {
    if (!is_core[p]) continue;
    std::size_t owner = absorbed_by[p];
    while (absorbed_by[owner] != owner) owner = absorbed_by[owner];
    labels[p] = static_cast<std::int32_t>(owner);
  }
  attach_border_points(state.bits, is_core, labels,
                       [&](std::size_t q) { return labels[q]; });
  return canonicalize(Labeling{std::move(labels)});
}

CoreAdjacency build_core_adjacency(const NeighborhoodMatrix& neighborhoods, const ValidVector& valid) {
  CoreAdjacency out;
  const std::size_t n = neighborhoods.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (valid.valid[i]) out.core_points.push_back(i);
  }
  const std::size_t m = out.core_points.size();
  out.adj = BitMatrix(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t pa = out.core_points[a];
    for (std::size_t b = 0; b < m; ++b) {
      if (neighborhoods.bits.test(pa, out.core_points[b])) out.adj.set(a, b);
    }
  }
  return out;
}

CoreAdjacency warshall_closure(CoreAdjacency adj, std::size_t threads) {
  const std::size_t m = adj.size();
  const std::size_t stride = adj.adj.words_per_row();
  BitMatrix::Word* words = adj.adj.words().data();
#pragma omp parallel num_threads(team_size(threads))
  for (std::size_t k = 0; k < m; ++k) {
    const BitMatrix::Word* pivot = words + k * stride;
    const std::size_t kw = k / BitMatrix::kWordBits;
    const BitMatrix::Word kbit = BitMatrix::Word{1} << (k % BitMatrix::kWordBits);
    // Row k is never written during pivot k, so reading it is race-free.
#pragma omp for schedule(static)
    for (std::size_t a = 0; a < m; ++a) {
      if (a == k) continue;
      BitMatrix::Word* row = words + a * stride;
      if ((row[kw] & kbit) == 0) continue;
      for (std::size_t w = 0; w < stride; ++w) row[w] |= pivot[w];
    }
    // implicit barrier at the end of omp for
  }
  return adj;
}

Labeling merge_warshall(const NeighborhoodMatrix& neighborhoods, const ValidVector& valid,
                        std::size_t threads) {
  check_consistent(neighborhoods, valid);
  const std::size_t n = neighborhoods.size();
  const CoreAdjacency closed = warshall_closure(build_core_adjacency(neighborhoods, valid), threads);

  std::vector<std::int32_t> labels(n, kNoise);
  for (std::size_t a = 0; a < closed.size(); ++a) {
    // The lowest rank in the closed row names the component.
    labels[closed.core_points[a]] = static_cast<std::int32_t>(closed.core_points[closed.adj.first_set(a)]);
  }
  attach_border_points(neighborhoods.bits, valid.valid, labels,
                       [&](std::size_t q) { return labels[q]; });
  return canonicalize(Labeling{std::move(labels)});
}

}  // namespace pdbscan
