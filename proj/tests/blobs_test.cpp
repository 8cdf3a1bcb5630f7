#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

namespace pdbscan {
namespace {

TEST(GenerateBlobs, DeterministicForSeed) {
  const PointSet a = generate_blobs(100, 2, 0.1, 0.0, 7);
  const PointSet b = generate_blobs(100, 2, 0.1, 0.0, 7);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, generate_blobs(100, 2, 0.1, 0.0, 8));
}

TEST(GenerateBlobs, ZeroSpreadCollapsesToCenter) {
  const PointSet pts = generate_blobs(10, 1, 0.0, 0.0, 1);
  ASSERT_EQ(pts.size(), 10u);
  for (const Point3& p : pts.aos()) EXPECT_EQ(p, pts[0]);
}

TEST(GenerateBlobs, NoiseCountAndCap) {
  const PointSet pts = generate_blobs(100, 4, 0.1, 0.25, 3);
  EXPECT_EQ(pts.size(), 100u);
  // All noise requested: every blob still keeps one point.
  EXPECT_EQ(generate_blobs(5, 5, 0.1, 1.0, 3).size(), 5u);
}

TEST(GenerateBlobs, RejectsBadArguments) {
  EXPECT_THROW(generate_blobs(5, 9, 0.1, 0.0, 1), InvalidParams);
  EXPECT_THROW(generate_blobs(5, 0, 0.1, 0.0, 1), InvalidParams);
  EXPECT_THROW(generate_blobs(5, 1, -0.1, 0.0, 1), InvalidParams);
  EXPECT_THROW(generate_blobs(5, 1, 0.1, 1.5, 1), InvalidParams);
  EXPECT_THROW(generate_blobs(5, 1, 0.1, -0.1, 1), InvalidParams);
}

TEST(GenerateBlobs, CentersAreWellSeparated) {
  for (double spread : {0.0, 0.05, 0.3, 2.0}) {
    EXPECT_GE(blob_spacing(spread), 10.0 * spread);
  }
}

// Three blobs with sigma 0.05 sit one unit apart; with eps = 2 sigma the
// oracle must find exactly three clusters.
TEST(GenerateBlobs, OracleFindsThreeBlobs) {
  const PointSet pts = generate_blobs(1000, 3, 0.05, 0.1, 42);
  const auto result = serial_dbscan(pts, validate_params(0.1, 10));
  EXPECT_EQ(cluster_count(result.labeling), 3u);
}

TEST(SnapToGrid, RoundsToNearestMultiple) {
  const PointSet snapped =
      snap_to_grid(testing::make_points({{0.26, -0.13, 1.0}, {-0.01, 0.374, 0.376}}), 0.25);
  EXPECT_EQ(snapped[0], (Point3{0.25, -0.25, 1.0}));
  EXPECT_EQ(snapped[1], (Point3{0.0, 0.25, 0.5}));
  EXPECT_FALSE(std::signbit(snapped[1].x));
}

TEST(SnapToGrid, RejectsBadStep) {
  const PointSet pts = testing::make_points({{0, 0, 0}});
  EXPECT_THROW(snap_to_grid(pts, 0.0), InvalidParams);
  EXPECT_THROW(snap_to_grid(pts, -1.0), InvalidParams);
  EXPECT_THROW(snap_to_grid(pts, std::nan("")), InvalidParams);
}

// On a 2^-7 grid with small coordinates every float kernel computes squared
// distances exactly, so all configurations agree with the 64-bit oracle for
// any eps, including ones that land right on a pair distance.
TEST(SnapToGrid, MakesFloatKernelsExact) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 200 + rng() % 600;
    const PointSet pts = snap_to_grid(generate_blobs(n, 1 + rng() % 8, 0.1, 0.1, rng()), 0x1p-7);
    const double eps = std::uniform_real_distribution<double>(0.03, 0.2)(rng);
    // Also try eps exactly equal to a pair distance.
    const double on_pair = std::sqrt(testing::brute_dist_sq64(pts)[1]);
    for (double e : {eps, on_pair}) {
      const DbscanParams params = validate_params(e, 1 + static_cast<long long>(rng() % 10));
      const Labeling oracle = serial_dbscan(pts, params).labeling;
      for (VariantId id : kAllVariants) {
        PipelineConfig config;
        config.variant.id = id;
        config.threads = 2;
        EXPECT_EQ(run_dbscan(pts, params, config).labeling, oracle) << to_string(id) << " trial " << trial;
      }
    }
  }
}

}  // namespace
}  // namespace pdbscan
