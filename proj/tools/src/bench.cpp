#include "pdbscan_cli/bench.hpp"

#include <map>
#include <string>
#include <thread>
#include <utility>

#include "pdbscan/blobs.hpp"
#include "pdbscan/errors.hpp"
#include "pdbscan/oracle.hpp"

namespace pdbscan::cli {
namespace {

double percent(double part, double whole) { return whole > 0.0 ? 100.0 * part / whole : 0.0; }

std::optional<double> ratio(std::optional<double> num, std::optional<double> den) {
  if (!num || !den || *den <= 0.0) return std::nullopt;
  return *num / *den;
}

BenchRow serial_row(std::size_t n, const OracleTrace& trace) {
  BenchRow row;
  row.data_size = n;
  row.variant = "serial";
  row.merge_backend = "serial";
  row.threads = 1;
  row.status = "ok";
  row.equivalent = true;
  row.dist_ms = trace.dist_sq_ms;
  row.cluster_ms = trace.cluster_build_ms;
  row.merge_ms = trace.merge_ms;
  row.build_ms = trace.dist_sq_ms + trace.cluster_build_ms;
  row.total_ms = trace.total_ms();
  row.dist_pct = percent(trace.dist_sq_ms, trace.total_ms());
  row.cluster_pct = percent(trace.cluster_build_ms, trace.total_ms());
  row.merge_pct = percent(trace.merge_ms, trace.total_ms());
  row.build_speedup = 1.0;
  row.overall_speedup = 1.0;
  return row;
}

void fill_timings(BenchRow& row, const StageTimings& t, const BenchRow& serial) {
  row.dist_ms = t.dist_ms;
  row.cluster_ms = t.cluster_ms;
  row.fused_ms = t.fused_ms;
  row.merge_ms = t.merge_ms;
  row.build_ms = t.build_ms();
  row.total_ms = t.total_ms;
  const double stages = t.build_ms() + t.merge_ms;
  if (t.dist_ms) row.dist_pct = percent(*t.dist_ms, stages);
  if (t.cluster_ms) row.cluster_pct = percent(*t.cluster_ms, stages);
  if (t.fused_ms) row.fused_pct = percent(*t.fused_ms, stages);
  row.merge_pct = percent(t.merge_ms, stages);
  row.build_speedup = ratio(serial.build_ms, row.build_ms);
  row.overall_speedup = ratio(serial.total_ms, row.total_ms);
}

}  // namespace

BenchReport run_bench(const BenchOptions& options, std::ostream& log) {
  if (options.sizes.empty()) throw InvalidParams("sizes", "at least one size is required");
  if (options.repeats < 1) throw InvalidParams("repeats", "must be at least 1");
  if (options.threads < 1) throw InvalidParams("threads", "must be at least 1");
  const DbscanParams params = validate_params(options.eps, options.min_pts);

  BenchReport report;
  report.repeats = options.repeats;
  report.seed = options.seed;
  report.eps = options.eps;
  report.min_pts = options.min_pts;
  report.clusters = options.clusters;
  report.spread = options.spread;
  report.noise = options.noise;
  report.grid = options.grid;
  report.threads = options.threads;
  report.hardware_threads = std::thread::hardware_concurrency();
  report.memory_cap_bytes = options.memory_cap;

  for (std::size_t n : options.sizes) {
    PointSet points = generate_blobs(n, options.clusters, options.spread, options.noise, options.seed);
    if (options.grid > 0.0) points = snap_to_grid(points, options.grid);

    log << "size " << n << ": serial oracle" << std::endl;
    const OracleResult oracle = serial_dbscan(points, params);

    SizeReport size;
    size.data_size = n;
    size.clusters_found = cluster_count(oracle.labeling);
    size.noise_points = noise_count(oracle.labeling);
    size.rows.push_back(serial_row(n, oracle.trace));
    const BenchRow serial = size.rows.front();

    for (MergeBackend backend : options.merge_backends) {
      std::optional<double> baseline_build;
      std::optional<double> previous_build;
      for (VariantId id : options.variants) {
        PipelineConfig config;
        config.variant = options.kernel;
        config.variant.id = id;
        config.merge_backend = backend;
        config.threads = options.threads;
        config.memory_cap = options.memory_cap;

        BenchRow row;
        row.data_size = n;
        row.variant = std::string(to_string(id));
        row.merge_backend = std::string(to_string(backend));
        row.threads = options.threads;
        log << "size " << n << ": " << row.variant << "/" << row.merge_backend << std::endl;

        std::optional<StageTimings> best;
        try {
          for (std::size_t r = 0; r < options.repeats; ++r) {
            PipelineResult result = run_dbscan(points, params, config);
            if (const auto diff = first_difference(result.labeling, oracle.labeling)) {
              throw EquivalenceViolation(
                  "equivalence violation: size " + std::to_string(n) + ", variant " + row.variant +
                  ", merge " + row.merge_backend + ", threads " + std::to_string(options.threads) +
                  ": first differing point index " + std::to_string(*diff));
            }
            if (!best || result.timings.total_ms < best->total_ms) best = result.timings;
          }
        } catch (const CapacityExceeded& e) {
          row.status = "capacity_exceeded";
          row.required_bytes = e.required_bytes();
          size.rows.push_back(std::move(row));
          previous_build.reset();
          log << "  skipped: " << e.what() << std::endl;
          continue;
        }

        row.status = "ok";
        row.equivalent = true;
        fill_timings(row, *best, serial);
        if (id == VariantId::kBaseline) baseline_build = row.build_ms;
        row.step_speedup = ratio(previous_build, row.build_ms);
        row.cumulative_speedup = ratio(baseline_build, row.build_ms);
        previous_build = row.build_ms;
        size.rows.push_back(std::move(row));
      }
    }
    report.sizes.push_back(std::move(size));
  }
  return report;
}

}  // namespace pdbscan::cli
