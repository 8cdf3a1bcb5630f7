#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace pdbscan {
namespace {

using testing::make_points;
using Labels = std::vector<std::int32_t>;

ClusterBuild build_for(const PointSet& pts, const DbscanParams& params) {
  return fused_build(pts, params, {VariantId::kFused, 256, 32}, 1);
}

// Monotonicity audit: snapshot after every pass and compare with the previous one.
struct TransitionAudit {
  BitMatrix prev_bits;
  std::vector<std::uint8_t> prev_valid;
  std::size_t bit_clears = 0;
  std::size_t valid_sets = 0;
  std::size_t passes = 0;

  explicit TransitionAudit(const ClusterBuild& b)
      : prev_bits(b.neighborhoods.bits), prev_valid(b.valid.valid) {}

  MergeObserver observer() {
    return [this](const MergeState& s, std::size_t) {
      ++passes;
      const auto now = s.bits.words();
      const auto before = prev_bits.words();
      for (std::size_t w = 0; w < now.size(); ++w) {
        bit_clears += static_cast<std::size_t>(std::popcount(before[w] & ~now[w]));
      }
      for (std::size_t i = 0; i < s.valid.size(); ++i) {
        if (!prev_valid[i] && s.valid[i]) ++valid_sets;
      }
      prev_bits = s.bits;
      prev_valid = s.valid;
    };
  }
};

TEST(MergeIterative, CollinearChainNeedsSecondPass) {
  const PointSet pts = make_points({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  const ClusterBuild b = build_for(pts, validate_params(1.2, 2));
  TransitionAudit audit(b);
  const Labeling l = merge_iterative(b.neighborhoods, b.valid, 2, audit.observer());
  EXPECT_EQ(l.labels, (Labels{0, 0, 0}));
  // Point 2 is absorbed in the same pass as point 1 only if the scan sees
  // row 1 already OR-ed in; either way the last pass absorbs nothing.
  EXPECT_GE(audit.passes, 2u);
  EXPECT_LE(audit.passes, 3u);
  EXPECT_EQ(audit.bit_clears, 0u);
  EXPECT_EQ(audit.valid_sets, 0u);
}

TEST(MergeIterative, TwoSeparatedGroups) {
  const PointSet pts = make_points({{0, 0, 0}, {1, 0, 0}, {20, 0, 0}, {21, 0, 0}});
  const ClusterBuild b = build_for(pts, validate_params(1.5, 2));
  EXPECT_EQ(merge_iterative(b.neighborhoods, b.valid, 1).labels, (Labels{0, 0, 1, 1}));
}

TEST(MergeIterative, AllIsolatedIsNoise) {
  const PointSet pts = testing::random_points(40, 3);
  const ClusterBuild b = build_for(pts, validate_params(1e-6, 2));
  TransitionAudit audit(b);
  const Labeling l = merge_iterative(b.neighborhoods, b.valid, 4, audit.observer());
  EXPECT_EQ(noise_count(l), 40u);
  EXPECT_EQ(audit.passes, 0u);
}

TEST(MergeIterative, RejectsInconsistentInput) {
  const PointSet pts = make_points({{0, 0, 0}, {1, 0, 0}, {5, 0, 0}});
  ClusterBuild b = build_for(pts, validate_params(1.2, 2));
  ValidVector bad = b.valid;
  // Counts are {2, 2, 1}; no threshold marks the count-1 point valid but not its count-2 twin.
  bad.valid[0] = 0;
  bad.valid[2] = 1;
  EXPECT_THROW(merge_iterative(b.neighborhoods, bad, 1), InconsistentInput);

  NeighborhoodMatrix wrong_count = b.neighborhoods;
  wrong_count.neighbor_count[1] = 7;
  EXPECT_THROW(merge_iterative(wrong_count, b.valid, 1), InconsistentInput);
  EXPECT_THROW(merge_warshall(wrong_count, b.valid, 1), InconsistentInput);

  ValidVector short_valid{{1, 1}};
  EXPECT_THROW(merge_iterative(b.neighborhoods, short_valid, 1), InconsistentInput);
}

TEST(MergeIterative, SurvivingRowsPartitionCores) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = testing::random_instance(seed, 400, 1e-2);
    const ClusterBuild b = build_for(inst.points, inst.params);
    MergeState last;
    merge_iterative(b.neighborhoods, b.valid, 3, [&](const MergeState& s, std::size_t) { last = s; });
    if (last.valid.empty()) continue;  // no cores, no passes
    for (std::size_t p = 0; p < inst.points.size(); ++p) {
      if (!b.valid.valid[p]) continue;
      std::size_t owners = 0;
      for (std::size_t t = 0; t < inst.points.size(); ++t) {
        if (last.valid[t] && last.bits.test(t, p)) ++owners;
      }
      EXPECT_EQ(owners, 1u) << "seed " << seed << " core " << p;
    }
  }
}

TEST(MergeIterative, ThreadCountIndependent) {
  const auto inst = testing::random_instance(77, 800, 1e-2);
  const ClusterBuild b = build_for(inst.points, inst.params);
  const Labeling ref = merge_iterative(b.neighborhoods, b.valid, 1);
  for (std::size_t threads : {2u, 3u, 7u}) EXPECT_EQ(merge_iterative(b.neighborhoods, b.valid, threads), ref);
}

TEST(CoreAdjacency, NoCores) {
  const PointSet pts = testing::random_points(10, 2);
  const ClusterBuild b = build_for(pts, validate_params(1e-6, 3));
  const CoreAdjacency adj = build_core_adjacency(b.neighborhoods, b.valid);
  EXPECT_EQ(adj.size(), 0u);
  EXPECT_EQ(adj.adj.rows(), 0u);
}

TEST(CoreAdjacency, CollinearCores) {
  const PointSet pts = make_points({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  const ClusterBuild b = build_for(pts, validate_params(1.2, 2));
  const CoreAdjacency adj = build_core_adjacency(b.neighborhoods, b.valid);
  ASSERT_EQ(adj.size(), 3u);
  EXPECT_TRUE(adj.adj.test(0, 1) && adj.adj.test(1, 2) && adj.adj.test(1, 0) && adj.adj.test(2, 1));
  EXPECT_FALSE(adj.adj.test(0, 2));
  EXPECT_FALSE(adj.adj.test(2, 0));
}

TEST(CoreAdjacency, AllOnesIsComplete) {
  const PointSet pts = testing::random_points(70, 4);
  const ClusterBuild b = build_for(pts, validate_params(10.0, 1));
  const CoreAdjacency adj = build_core_adjacency(b.neighborhoods, b.valid);
  ASSERT_EQ(adj.size(), 70u);
  for (std::size_t a = 0; a < 70; ++a) EXPECT_EQ(adj.adj.row_popcount(a), 70u);
}

CoreAdjacency identity(std::size_t m) {
  CoreAdjacency adj;
  for (std::size_t i = 0; i < m; ++i) adj.core_points.push_back(i);
  adj.adj = BitMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i) adj.adj.set(i, i);
  return adj;
}

TEST(WarshallClosure, ChainGainsTransitiveEdge) {
  CoreAdjacency adj = identity(3);
  adj.adj.set(0, 1);
  adj.adj.set(1, 0);
  adj.adj.set(1, 2);
  adj.adj.set(2, 1);
  const CoreAdjacency closed = warshall_closure(adj, 2);
  EXPECT_TRUE(closed.adj.test(0, 2));
  EXPECT_TRUE(closed.adj.test(2, 0));
}

TEST(WarshallClosure, IdentityUnchanged) {
  const CoreAdjacency adj = identity(90);
  EXPECT_EQ(warshall_closure(adj, 3).adj, adj.adj);
}

TEST(WarshallClosure, ComponentsMatchBfsAndIdempotent) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 1 + rng() % 200;
    const double p = std::uniform_real_distribution<double>(0.0, 3.0 / static_cast<double>(m))(rng);
    CoreAdjacency adj = identity(m);
    std::vector<std::vector<std::size_t>> lists(m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        if (std::bernoulli_distribution(p)(rng)) {
          adj.adj.set(a, b);
          adj.adj.set(b, a);
          lists[a].push_back(b);
          lists[b].push_back(a);
        }
      }
    }
    const CoreAdjacency closed = warshall_closure(adj, 1 + rng() % 4);
    const auto comp = testing::bfs_components(lists);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) ASSERT_EQ(closed.adj.test(a, b), comp[a] == comp[b]);
    }
    EXPECT_EQ(warshall_closure(closed, 2).adj, closed.adj);
  }
}

TEST(MergeWarshall, NoCoresAllNoise) {
  const PointSet pts = testing::random_points(25, 6);
  const ClusterBuild b = build_for(pts, validate_params(1e-6, 2));
  EXPECT_EQ(noise_count(merge_warshall(b.neighborhoods, b.valid, 2)), 25u);
}

TEST(MergeWarshall, ThreeBlobsMatchOracle) {
  const PointSet pts = generate_blobs(1000, 3, 0.05, 0.1, 42);
  const DbscanParams params = validate_params(0.1, 10);
  const ClusterBuild b = build_for(pts, params);
  const Labeling warshall = merge_warshall(b.neighborhoods, b.valid, 2);
  EXPECT_EQ(cluster_count(warshall), 3u);
  EXPECT_EQ(warshall, serial_dbscan(pts, params).labeling);
}

TEST(MergeBackends, AgreeWithOracle) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const auto inst = testing::random_instance(seed, 500, 1e-2);
    const ClusterBuild b = build_for(inst.points, inst.params);
    const Labeling oracle = serial_dbscan(inst.points, inst.params).labeling;
    EXPECT_EQ(merge_iterative(b.neighborhoods, b.valid, 2), oracle) << "seed " << seed;
    EXPECT_EQ(merge_warshall(b.neighborhoods, b.valid, 2), oracle) << "seed " << seed;
  }
}

}  // namespace
}  // namespace pdbscan
