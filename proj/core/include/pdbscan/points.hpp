#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pdbscan {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

/// An immutable set of 3D points held in two layouts: point-major (AoS) and
/// coordinate-major (SoA, one array per axis). Both always hold the same
/// values; kernels pick whichever layout their traversal wants.
class PointSet {
 public:
  /// Throws EmptyDataset if `points` is empty and InvalidParams if any
  /// coordinate is NaN or infinite.
  explicit PointSet(std::vector<Point3> points);

  std::size_t size() const noexcept { return aos_.size(); }

  std::span<const Point3> aos() const noexcept { return aos_; }
  std::span<const double> xs() const noexcept { return x_; }
  std::span<const double> ys() const noexcept { return y_; }
  std::span<const double> zs() const noexcept { return z_; }

  const Point3& operator[](std::size_t i) const noexcept { return aos_[i]; }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.aos_ == b.aos_; }

 private:
  std::vector<Point3> aos_;
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> z_;
};

/// Radius and density threshold. Only constructible through validate_params,
/// so eps > 0, eps_sq == eps * eps and min_pts >= 1 always hold.
class DbscanParams {
 public:
  double eps() const noexcept { return eps_; }
  double eps_sq() const noexcept { return eps_sq_; }
  std::size_t min_pts() const noexcept { return min_pts_; }

 private:
  DbscanParams(double eps, std::size_t min_pts) noexcept
      : eps_(eps), eps_sq_(eps * eps), min_pts_(min_pts) {}
  friend DbscanParams validate_params(double eps, long long min_pts);

  double eps_;
  double eps_sq_;
  std::size_t min_pts_;
};

/// Throws InvalidParams naming "eps" or "min_pts".
DbscanParams validate_params(double eps, long long min_pts);

inline constexpr std::int32_t kNoise = -1;

struct Labeling {
  std::vector<std::int32_t> labels;

  std::size_t size() const noexcept { return labels.size(); }
  friend bool operator==(const Labeling&, const Labeling&) = default;
};

/// Renumbers clusters 0, 1, 2, ... in order of first appearance; noise stays
/// kNoise.
Labeling canonicalize(const Labeling& labeling);

std::size_t cluster_count(const Labeling& labeling);
std::size_t noise_count(const Labeling& labeling);

}  // namespace pdbscan
