#include "pdbscan/blobs.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pdbscan/errors.hpp"

namespace pdbscan {

double blob_spacing(double spread) noexcept { return std::max(1.0, 10.0 * spread); }

PointSet generate_blobs(std::size_t n, std::size_t clusters, double spread, double noise_fraction,
                        std::uint64_t seed) {
  if (clusters < 1) throw InvalidParams("clusters", "must be at least 1");
  if (n < clusters) throw InvalidParams("n", "must be at least the cluster count");
  if (!std::isfinite(spread) || spread < 0.0) {
    throw InvalidParams("spread", "must be finite and non-negative");
  }
  if (!(noise_fraction >= 0.0 && noise_fraction <= 1.0)) {
    throw InvalidParams("noise_fraction", "must lie in [0, 1]");
  }

  std::size_t side = 1;
  while (side * side * side < clusters) ++side;
  const double spacing = blob_spacing(spread);

  std::vector<Point3> centers;
  centers.reserve(clusters);
  for (std::size_t c = 0; c < clusters; ++c) {
    centers.push_back({spacing * static_cast<double>(c % side),
                       spacing * static_cast<double>((c / side) % side),
                       spacing * static_cast<double>(c / (side * side))});
  }

  const auto requested_noise =
      static_cast<std::size_t>(std::llround(noise_fraction * static_cast<double>(n)));
  const std::size_t noise = std::min(requested_noise, n - clusters);
  const std::size_t blob_points = n - noise;

  std::mt19937_64 rng(seed);
  std::vector<Point3> points;
  points.reserve(n);

  if (spread > 0.0) {
    std::normal_distribution<double> offset(0.0, spread);
    for (std::size_t i = 0; i < blob_points; ++i) {
      const Point3& c = centers[i % clusters];
      const double dx = offset(rng);
      const double dy = offset(rng);
      const double dz = offset(rng);
      points.push_back({c.x + dx, c.y + dy, c.z + dz});
    }
  } else {
    for (std::size_t i = 0; i < blob_points; ++i) points.push_back(centers[i % clusters]);
  }

  const double lo = -0.5 * spacing;
  const double hi = spacing * static_cast<double>(side - 1) + 0.5 * spacing;
  std::uniform_real_distribution<double> uniform(lo, hi);
  for (std::size_t i = 0; i < noise; ++i) {
    const double x = uniform(rng);
    const double y = uniform(rng);
    const double z = uniform(rng);
    points.push_back({x, y, z});
  }
  return PointSet(std::move(points));
}

PointSet snap_to_grid(const PointSet& points, double step) {
  if (!std::isfinite(step) || step <= 0.0) throw InvalidParams("step", "must be finite and positive");
  std::vector<Point3> out;
  out.reserve(points.size());
  const auto snap = [step](double v) { return std::nearbyint(v / step) * step + 0.0; };  // + 0.0 drops the sign of zero
  for (const Point3& p : points.aos()) out.push_back({snap(p.x), snap(p.y), snap(p.z)});
  return PointSet(std::move(out));
}

}  // namespace pdbscan
