#include "pdbscan/points.hpp"

#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "pdbscan/errors.hpp"

namespace pdbscan {

PointSet::PointSet(std::vector<Point3> points) : aos_(std::move(points)) {
  if (aos_.empty()) {
    throw EmptyDataset("point set must contain at least one point");
  }
  x_.reserve(aos_.size());
  y_.reserve(aos_.size());
  z_.reserve(aos_.size());
  for (std::size_t i = 0; i < aos_.size(); ++i) {
    const Point3& p = aos_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw InvalidParams("points", "non-finite coordinate at index " + std::to_string(i));
    }
    x_.push_back(p.x);
    y_.push_back(p.y);
    z_.push_back(p.z);
  }
}

DbscanParams validate_params(double eps, long long min_pts) {
  if (!std::isfinite(eps) || eps <= 0.0) {
    throw InvalidParams("eps", "must be positive and finite");
  }
  if (!std::isfinite(eps * eps)) {
    throw InvalidParams("eps", "eps squared overflows");
  }
  if (min_pts < 1) {
    throw InvalidParams("min_pts", "must be at least 1");
  }
  return DbscanParams(eps, static_cast<std::size_t>(min_pts));
}

Labeling canonicalize(const Labeling& labeling) {
  Labeling out;
  out.labels.reserve(labeling.size());
  std::unordered_map<std::int32_t, std::int32_t> remap;
  for (std::int32_t label : labeling.labels) {
    if (label < 0) {
      out.labels.push_back(kNoise);
      continue;
    }
    auto [it, inserted] = remap.try_emplace(label, static_cast<std::int32_t>(remap.size()));
    out.labels.push_back(it->second);
  }
  return out;
}

std::size_t cluster_count(const Labeling& labeling) {
  std::unordered_set<std::int32_t> ids;
  for (std::int32_t label : labeling.labels) {
    if (label >= 0) ids.insert(label);
  }
  return ids.size();
}

std::size_t noise_count(const Labeling& labeling) {
  std::size_t count = 0;
  for (std::int32_t label : labeling.labels) {
    if (label < 0) ++count;
  }
  return count;
}

}  // namespace pdbscan
