#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pdbscan::cli {

/// One measured configuration. The serial oracle appears as a row too, with
/// variant and merge_backend both "serial".
///
/// Percentages are shares of the sum of the recorded stage times. Speedups:
///   build_speedup       serial (dist + cluster) / this build time
///   overall_speedup     serial total / this total
///   step_speedup        previous variant in the ladder / this build time
///   cumulative_speedup  baseline variant / this build time
/// The last two compare rows with the same merge backend.
struct BenchRow {
  std::size_t data_size = 0;
  std::string variant;
  std::string merge_backend;
  std::size_t threads = 1;
  std::string status;  // "ok" or "capacity_exceeded"
  std::optional<bool> equivalent;
  std::optional<double> dist_ms;
  std::optional<double> cluster_ms;
  std::optional<double> fused_ms;
  std::optional<double> merge_ms;
  std::optional<double> build_ms;
  std::optional<double> total_ms;
  std::optional<double> dist_pct;
  std::optional<double> cluster_pct;
  std::optional<double> fused_pct;
  std::optional<double> merge_pct;
  std::optional<double> build_speedup;
  std::optional<double> overall_speedup;
  std::optional<double> step_speedup;
  std::optional<double> cumulative_speedup;
  std::optional<std::uint64_t> required_bytes;
};

struct SizeReport {
  std::size_t data_size = 0;
  std::size_t clusters_found = 0;
  std::size_t noise_points = 0;
  std::vector<BenchRow> rows;  // rows.front() is the serial oracle
};

struct BenchReport {
  std::size_t repeats = 0;
  std::uint64_t seed = 0;
  double eps = 0.0;
  long long min_pts = 0;
  std::size_t clusters = 0;
  double spread = 0.0;
  double noise = 0.0;
  double grid = 0.0;
  std::size_t threads = 0;
  std::size_t hardware_threads = 0;
  std::uint64_t memory_cap_bytes = 0;
  std::vector<SizeReport> sizes;
};

/// Column order shared by the CSV header and the JSON row objects.
const std::vector<std::string>& row_columns();

/// Cell text for one column: shortest round-trip number, "true"/"false", the
/// string itself, or empty when the value is absent.
std::string cell(const BenchRow& row, const std::string& column);

/// '#' comment lines describing the run, then a header and one row per
/// configuration.
void write_csv(const BenchReport& report, std::ostream& out);

/// Object with run metadata and a "sizes" array; each size carries its
/// serial stage breakdown and the same rows as the CSV.
void write_json(const BenchReport& report, std::ostream& out);

}  // namespace pdbscan::cli
