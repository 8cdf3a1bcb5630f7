#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "pdbscan/kernels.hpp"
#include "pdbscan/pipeline.hpp"
#include "pdbscan_cli/report.hpp"

namespace pdbscan::cli {

struct BenchOptions {
  std::vector<std::size_t> sizes;
  double eps = 0.05;
  long long min_pts = 10;
  std::uint64_t seed = 42;
  std::size_t repeats = 5;
  std::size_t clusters = 8;
  double spread = 0.1;
  double noise = 0.05;
  double grid = 0.0078125;  // 2^-7; zero keeps raw coordinates
  std::size_t threads = default_thread_count();
  std::vector<VariantId> variants{std::begin(kAllVariants), std::end(kAllVariants)};
  std::vector<MergeBackend> merge_backends{std::begin(kAllMergeBackends), std::end(kAllMergeBackends)};
  KernelVariant kernel{};  // tile and unroll settings; id is overwritten per row
  std::uint64_t memory_cap = kDefaultMatrixCapBytes;
};

/// A configuration produced a labeling that differs from the oracle.
class EquivalenceViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generates a blob dataset per size, runs the oracle once and every
/// variant/backend pair `repeats` times, and keeps the fastest run of each.
/// Every run is compared with the oracle; the first mismatch throws
/// EquivalenceViolation naming the size, configuration and point index.
/// Configurations over the memory cap become capacity_exceeded rows.
/// Progress goes to `log`.
BenchReport run_bench(const BenchOptions& options, std::ostream& log);

}  // namespace pdbscan::cli
