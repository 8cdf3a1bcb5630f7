#include "pdbscan_cli/cli.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pdbscan/pdbscan.hpp"
#include "pdbscan_cli/bench.hpp"
#include "pdbscan_cli/report.hpp"

namespace pdbscan::cli {
namespace {

struct GenArgs {
  std::size_t n = 0;
  std::size_t clusters = 3;
  double spread = 0.1;
  double noise = 0.0;
  std::uint64_t seed = 0;
  double grid = 0.0;
  std::string out;
};

struct ClusterArgs {
  std::string input;
  double eps = 0.0;
  long long min_pts = 0;
  std::string variant = "fused_algebraic";
  std::string merge = "iterative";
  std::size_t threads = default_thread_count();
  std::size_t tile = KernelVariant{}.tile_size;
  std::size_t unroll = KernelVariant{}.unroll_width;
  std::string output;
};

struct BenchArgs {
  std::string sizes;
  BenchOptions options;
  std::string variants;
  std::string merges;
  std::string report;
  std::string format = "csv";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty entry in list '" + text + "'");
    out.push_back(item);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::size_t parse_size(const std::string& text) {
  std::size_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || value == 0) {
    throw UsageError("size must be a positive integer, got '" + text + "'");
  }
  return value;
}

std::string fmt_ms(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << *v;
  return os.str();
}

std::string usage_text(const CLI::App& app) { return app.help(); }

int cmd_gen(const GenArgs& a, std::ostream& out) {
  PointSet points = generate_blobs(a.n, a.clusters, a.spread, a.noise, a.seed);
  if (a.grid > 0.0) points = snap_to_grid(points, a.grid);
  write_points(points, a.out);
  out << "wrote " << points.size() << " points to " << a.out << '\n';
  return kExitOk;
}

int cmd_cluster(const ClusterArgs& a, std::ostream& out) {
  const DbscanParams params = validate_params(a.eps, a.min_pts);
  const PointSet points = load_points(a.input);

  Labeling labeling;
  StageTimings t;
  std::size_t threads = a.threads;
  if (a.variant == "serial") {
    OracleResult r = serial_dbscan(points, params);
    labeling = std::move(r.labeling);
    t.dist_ms = r.trace.dist_sq_ms;
    t.cluster_ms = r.trace.cluster_build_ms;
    t.merge_ms = r.trace.merge_ms;
    t.total_ms = r.trace.total_ms();
    threads = 1;
  } else {
    const auto id = parse_variant(a.variant);
    if (!id) throw UsageError("unknown variant '" + a.variant + "'");
    const auto backend = parse_merge_backend(a.merge);
    if (!backend) throw UsageError("unknown merge backend '" + a.merge + "'");
    PipelineConfig config;
    config.variant = {*id, a.tile, a.unroll};
    config.merge_backend = *backend;
    config.threads = a.threads;
    config.memory_cap = matrix_cap_from_env();
    PipelineResult r = run_dbscan(points, params, config);
    labeling = std::move(r.labeling);
    t = r.timings;
  }
  if (!a.output.empty()) write_labels(labeling, a.output);

  out << "n=" << points.size() << " clusters=" << cluster_count(labeling)
      << " noise=" << noise_count(labeling) << " variant=" << a.variant
      << " merge=" << (a.variant == "serial" ? "serial" : a.merge) << " threads=" << threads
      << " dist_ms=" << fmt_ms(t.dist_ms) << " cluster_ms=" << fmt_ms(t.cluster_ms)
      << " fused_ms=" << fmt_ms(t.fused_ms) << " merge_ms=" << fmt_ms(t.merge_ms)
      << " total_ms=" << fmt_ms(t.total_ms) << '\n';
  return kExitOk;
}

int cmd_bench(BenchArgs a, std::ostream& out, std::ostream& err) {
  for (const std::string& s : split_list(a.sizes)) a.options.sizes.push_back(parse_size(s));
  if (!a.variants.empty()) {
    a.options.variants.clear();
    for (const std::string& v : split_list(a.variants)) {
      const auto id = parse_variant(v);
      if (!id) throw UsageError("unknown variant '" + v + "'");
      a.options.variants.push_back(*id);
    }
  }
  if (!a.merges.empty()) {
    a.options.merge_backends.clear();
    for (const std::string& m : split_list(a.merges)) {
      const auto backend = parse_merge_backend(m);
      if (!backend) throw UsageError("unknown merge backend '" + m + "'");
      a.options.merge_backends.push_back(*backend);
    }
  }
  a.options.memory_cap = matrix_cap_from_env();

  const BenchReport report = run_bench(a.options, err);

  std::ofstream file;
  if (!a.report.empty()) {
    file.open(a.report);
    if (!file) throw IoError("cannot open report file '" + a.report + "' for writing");
  }
  std::ostream& sink = a.report.empty() ? out : file;
  if (a.format == "json") {
    write_json(report, sink);
  } else {
    write_csv(report, sink);
  }
  sink.flush();
  if (!sink) throw IoError("failed writing report");
  if (!a.report.empty()) out << "wrote report to " << a.report << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Data-parallel DBSCAN for 3-D point sets", "pdbscan"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a synthetic blob dataset");
  gen_cmd->add_option("--n", gen.n, "Number of points")->required();
  gen_cmd->add_option("--clusters", gen.clusters, "Number of blobs")->capture_default_str();
  gen_cmd->add_option("--spread", gen.spread, "Blob standard deviation")->capture_default_str();
  gen_cmd->add_option("--noise", gen.noise, "Fraction of uniform noise points")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--grid", gen.grid, "Snap coordinates to this step (0 disables)")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output point file")->required();

  ClusterArgs cl;
  CLI::App* cl_cmd = app.add_subcommand("cluster", "Cluster a point file");
  cl_cmd->add_option("--input", cl.input, "Point file, one 'x y z' per line")->required();
  cl_cmd->add_option("--eps", cl.eps, "Neighborhood radius")->required();
  cl_cmd->add_option("--minpts", cl.min_pts, "Core point threshold, self included")->required();
  cl_cmd->add_option("--variant", cl.variant,
                     "baseline, soa, tiled, tiled_unrolled, fused, fused_algebraic or serial")
      ->capture_default_str();
  cl_cmd->add_option("--merge", cl.merge, "iterative or warshall")->capture_default_str();
  cl_cmd->add_option("--threads", cl.threads, "Worker threads")->capture_default_str();
  cl_cmd->add_option("--tile", cl.tile, "Tile size")->capture_default_str();
  cl_cmd->add_option("--unroll", cl.unroll, "Unroll width")->capture_default_str();
  cl_cmd->add_option("--output", cl.output, "Label file to write");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time every variant against the serial oracle");
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated dataset sizes")->required();
  bench_cmd->add_option("--eps", bench.options.eps, "Neighborhood radius")->capture_default_str();
  bench_cmd->add_option("--minpts", bench.options.min_pts, "Core point threshold")->capture_default_str();
  bench_cmd->add_option("--seed", bench.options.seed, "Dataset seed")->capture_default_str();
  bench_cmd->add_option("--repeats", bench.options.repeats, "Runs per configuration; the fastest is kept")
      ->capture_default_str();
  bench_cmd->add_option("--clusters", bench.options.clusters, "Number of blobs")->capture_default_str();
  bench_cmd->add_option("--spread", bench.options.spread, "Blob standard deviation")->capture_default_str();
  bench_cmd->add_option("--noise", bench.options.noise, "Fraction of noise points")->capture_default_str();
  bench_cmd->add_option("--grid", bench.options.grid, "Coordinate grid step (0 disables)")->capture_default_str();
  bench_cmd->add_option("--threads", bench.options.threads, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--tile", bench.options.kernel.tile_size, "Tile size")->capture_default_str();
  bench_cmd->add_option("--unroll", bench.options.kernel.unroll_width, "Unroll width")->capture_default_str();
  bench_cmd->add_option("--variants", bench.variants, "Comma-separated variants (default all)");
  bench_cmd->add_option("--merge", bench.merges, "Comma-separated merge backends (default all)");
  bench_cmd->add_option("--report", bench.report, "Report file (default stdout)");
  bench_cmd->add_option("--format", bench.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    const CLI::App* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << usage_text(*failed);
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (cl_cmd->parsed()) return cmd_cluster(cl, out);
    return cmd_bench(std::move(bench), out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EquivalenceViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace pdbscan::cli
