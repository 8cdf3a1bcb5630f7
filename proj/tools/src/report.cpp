#include "pdbscan_cli/report.hpp"

#include <array>
#include <charconv>

#include "json.hpp"

namespace pdbscan::cli {
namespace {

using nlohmann::ordered_json;

template <typename T>
std::string number_text(T value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

template <typename T>
std::string optional_text(const std::optional<T>& value) {
  return value ? number_text(*value) : std::string();
}

template <typename T>
ordered_json optional_json(const std::optional<T>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

ordered_json row_json(const BenchRow& r) {
  ordered_json j;
  j["data_size"] = r.data_size;
  j["variant"] = r.variant;
  j["merge_backend"] = r.merge_backend;
  j["threads"] = r.threads;
  j["status"] = r.status;
  j["equivalent"] = optional_json(r.equivalent);
  j["dist_ms"] = optional_json(r.dist_ms);
  j["cluster_ms"] = optional_json(r.cluster_ms);
  j["fused_ms"] = optional_json(r.fused_ms);
  j["merge_ms"] = optional_json(r.merge_ms);
  j["build_ms"] = optional_json(r.build_ms);
  j["total_ms"] = optional_json(r.total_ms);
  j["dist_pct"] = optional_json(r.dist_pct);
  j["cluster_pct"] = optional_json(r.cluster_pct);
  j["fused_pct"] = optional_json(r.fused_pct);
  j["merge_pct"] = optional_json(r.merge_pct);
  j["build_speedup"] = optional_json(r.build_speedup);
  j["overall_speedup"] = optional_json(r.overall_speedup);
  j["step_speedup"] = optional_json(r.step_speedup);
  j["cumulative_speedup"] = optional_json(r.cumulative_speedup);
  j["required_bytes"] = optional_json(r.required_bytes);
  return j;
}

std::string method_text(const BenchReport& report) {
  return "each configuration ran " + std::to_string(report.repeats) +
         " times; reported timings come from the fastest run by total time; the serial oracle ran once";
}

}  // namespace

const std::vector<std::string>& row_columns() {
  static const std::vector<std::string> columns = [] {
    std::vector<std::string> out;
    const ordered_json sample = row_json(BenchRow{});
    for (const auto& item : sample.items()) out.push_back(item.key());
    return out;
  }();
  return columns;
}

std::string cell(const BenchRow& r, const std::string& column) {
  if (column == "data_size") return number_text(r.data_size);
  if (column == "variant") return r.variant;
  if (column == "merge_backend") return r.merge_backend;
  if (column == "threads") return number_text(r.threads);
  if (column == "status") return r.status;
  if (column == "equivalent") return r.equivalent ? (*r.equivalent ? "true" : "false") : "";
  if (column == "dist_ms") return optional_text(r.dist_ms);
  if (column == "cluster_ms") return optional_text(r.cluster_ms);
  if (column == "fused_ms") return optional_text(r.fused_ms);
  if (column == "merge_ms") return optional_text(r.merge_ms);
  if (column == "build_ms") return optional_text(r.build_ms);
  if (column == "total_ms") return optional_text(r.total_ms);
  if (column == "dist_pct") return optional_text(r.dist_pct);
  if (column == "cluster_pct") return optional_text(r.cluster_pct);
  if (column == "fused_pct") return optional_text(r.fused_pct);
  if (column == "merge_pct") return optional_text(r.merge_pct);
  if (column == "build_speedup") return optional_text(r.build_speedup);
  if (column == "overall_speedup") return optional_text(r.overall_speedup);
  if (column == "step_speedup") return optional_text(r.step_speedup);
  if (column == "cumulative_speedup") return optional_text(r.cumulative_speedup);
  if (column == "required_bytes") return optional_text(r.required_bytes);
  return {};
}

void write_csv(const BenchReport& report, std::ostream& out) {
  out << "# " << method_text(report) << '\n';
  out << "# eps=" << number_text(report.eps) << " min_pts=" << report.min_pts
      << " seed=" << report.seed << " clusters=" << report.clusters
      << " spread=" << number_text(report.spread) << " noise=" << number_text(report.noise)
      << " grid=" << number_text(report.grid) << '\n';
  out << "# threads=" << report.threads << " hardware_threads=" << report.hardware_threads
      << " kernel_real_bits=32 oracle_real_bits=64 memory_cap_bytes=" << report.memory_cap_bytes
      << '\n';
  const auto& columns = row_columns();
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const SizeReport& size : report.sizes) {
    for (const BenchRow& row : size.rows) {
      for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << cell(row, columns[c]);
      out << '\n';
    }
  }
}

void write_json(const BenchReport& report, std::ostream& out) {
  ordered_json j;
  j["method"] = method_text(report);
  j["parameters"] = {{"eps", report.eps},           {"min_pts", report.min_pts},
                     {"seed", report.seed},         {"repeats", report.repeats},
                     {"clusters", report.clusters}, {"spread", report.spread},
                     {"noise", report.noise},       {"grid", report.grid}};
  j["environment"] = {{"threads", report.threads},
                      {"hardware_threads", report.hardware_threads},
                      {"kernel_real_bits", 32},
                      {"oracle_real_bits", 64},
                      {"memory_cap_bytes", report.memory_cap_bytes}};
  ordered_json sizes = ordered_json::array();
  for (const SizeReport& size : report.sizes) {
    ordered_json s;
    s["data_size"] = size.data_size;
    s["clusters_found"] = size.clusters_found;
    s["noise_points"] = size.noise_points;
    if (!size.rows.empty()) {
      const BenchRow& serial = size.rows.front();
      s["serial_breakdown"] = ordered_json::array({
          {{"stage", "distance"}, {"ms", optional_json(serial.dist_ms)}, {"percent", optional_json(serial.dist_pct)}},
          {{"stage", "neighborhoods"}, {"ms", optional_json(serial.cluster_ms)}, {"percent", optional_json(serial.cluster_pct)}},
          {{"stage", "merge"}, {"ms", optional_json(serial.merge_ms)}, {"percent", optional_json(serial.merge_pct)}},
      });
    }
    ordered_json rows = ordered_json::array();
    for (const BenchRow& row : size.rows) rows.push_back(row_json(row));
    s["rows"] = std::move(rows);
    sizes.push_back(std::move(s));
  }
  j["sizes"] = std::move(sizes);
  out << j.dump(2) << '\n';
}

}  // namespace pdbscan::cli
