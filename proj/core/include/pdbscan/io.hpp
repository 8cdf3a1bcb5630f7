#pragma once

#include <filesystem>
#include <iosfwd>

#include "pdbscan/points.hpp"

namespace pdbscan {

// Point files are plain text, one point per line as `x y z` or `x,y,z`.
// Blank lines and lines whose first non-blank character is '#' are skipped.
// Label files hold one signed integer per line, -1 for noise.

PointSet load_points(const std::filesystem::path& path);
PointSet parse_points(std::istream& in);

/// Writes coordinates in shortest round-trip form, so load_points returns
/// bitwise-identical values.
void write_points(const PointSet& points, const std::filesystem::path& path);

/// Precondition: labeling is non-empty (it always is when produced from a
/// PointSet).
void write_labels(const Labeling& labeling, const std::filesystem::path& path);
Labeling load_labels(const std::filesystem::path& path);

}  // namespace pdbscan
