#include "pdbscan/oracle.hpp"

#include <chrono>
#include <cstdint>
#include <deque>
#include <limits>

#include "pdbscan/errors.hpp"

namespace pdbscan {
namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

}  // namespace

double dist_sq64(const Point3& a, const Point3& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

std::vector<std::size_t> brute_force_neighbors(const PointSet& points, std::size_t i,
                                               const DbscanParams& params) {
  if (i >= points.size()) throw IndexOutOfRange(i, points.size());
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (dist_sq64(points[i], points[j]) <= params.eps_sq()) out.push_back(j);
  }
  return out;
}

OracleResult serial_dbscan(const PointSet& points, const DbscanParams& params) {
  const std::size_t n = points.size();
  const auto aos = points.aos();
  const double eps_sq = params.eps_sq();

  OracleResult result;
  OracleTrace& trace = result.trace;

  // Stages 1 and 2 alternate per row; their timers accumulate separately.
  std::vector<double> dist_row(n);
  std::vector<std::vector<std::uint32_t>> neighbors(n);
  std::vector<bool> core(n, false);
  Clock::duration dist_time{};
  Clock::duration build_time{};

  for (std::size_t i = 0; i < n; ++i) {
    const auto t0 = Clock::now();
    const Point3 t = aos[i];
    for (std::size_t j = 0; j < n; ++j) dist_row[j] = dist_sq64(t, aos[j]);
    const auto t1 = Clock::now();
    auto& nbrs = neighbors[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (dist_row[j] <= eps_sq) nbrs.push_back(static_cast<std::uint32_t>(j));
    }
    core[i] = nbrs.size() >= params.min_pts();
    const auto t2 = Clock::now();
    dist_time += t1 - t0;
    build_time += t2 - t1;
  }
  trace.dist_sq_ms = std::chrono::duration<double, std::milli>(dist_time).count();
  trace.cluster_build_ms = std::chrono::duration<double, std::milli>(build_time).count();

  const auto merge_start = Clock::now();
  std::vector<std::int32_t> labels(n, kNoise);
  std::int32_t next_id = 0;
  std::deque<std::uint32_t> frontier;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (!core[seed] || labels[seed] != kNoise) continue;
    ++trace.core_count;
    labels[seed] = next_id;
    frontier.push_back(static_cast<std::uint32_t>(seed));
    while (!frontier.empty()) {
      const std::uint32_t p = frontier.front();
      frontier.pop_front();
      for (std::uint32_t q : neighbors[p]) {
        if (core[q] && labels[q] == kNoise) {
          labels[q] = next_id;
          ++trace.core_count;
          frontier.push_back(q);
        }
      }
    }
    ++next_id;
  }
  // Border points: neighbor lists are ascending, so the first core found is
  // the lowest-indexed one.
  for (std::size_t p = 0; p < n; ++p) {
    if (core[p]) continue;
    for (std::uint32_t q : neighbors[p]) {
      if (core[q]) {
        labels[p] = labels[q];
        break;
      }
    }
  }
  trace.merge_ms = ms_between(merge_start, Clock::now());

  result.labeling = canonicalize(Labeling{std::move(labels)});
  return result;
}

}  // namespace pdbscan
