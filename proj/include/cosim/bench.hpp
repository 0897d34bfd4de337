#pragma once

// Throughput harness for the bound formulas.
//
// Each subject streams a pre-generated array of uniform random similarities
// through its formula, pairing element i with element i+1 (wrapping), and
// sums the results into a checksum. An iteration repeats whole passes until
// `iter_duration_target` has elapsed; the per-iteration cost is wall time
// divided by pairs processed. Warmup iterations are discarded.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cosim/bounds.hpp"

namespace cosim::bench {

struct BenchConfig {
  std::size_t array_size = 2'000'000;
  std::size_t warmup_iters = 5;
  std::size_t measure_iters = 10;
  double iter_duration_target = 0.25;  // seconds
  std::uint64_t seed = 42;

  /// Throws std::invalid_argument on zero counts or a non-positive duration.
  void validate() const;
};

struct SubjectResult {
  std::string name;
  std::optional<BoundKind> kind;  ///< empty for the baseline
  std::string accuracy;           ///< static tightness annotation
  double mean_ns = 0.0;
  double stddev_ns = 0.0;
  double minus_baseline_ns = 0.0;
  double checksum = 0.0;  ///< sum of one pass; depends only on the input array
  std::vector<double> samples_ns;
};

struct BenchReport {
  BenchConfig config;
  std::vector<SubjectResult> subjects;  ///< baseline first, then every BoundKind
  bool pinned = false;
  double elapsed_seconds = 0.0;
  std::vector<std::string> notes;

  const SubjectResult& at(std::string_view name) const;
};

/// Uniform similarities on [-1, 1].
std::vector<double> generate_inputs(std::size_t size, std::uint64_t seed);

/// Sum of f(a[i], a[i+1 mod n]) over one pass, for `kind` or the baseline.
double pass_checksum(std::span<const double> inputs, std::optional<BoundKind> kind);

/// Restricts the calling thread to the CPU it is running on. Returns false
/// where the platform does not allow it.
bool pin_to_single_cpu();

BenchReport run_bench(const BenchConfig& config);

std::string_view accuracy_annotation(std::optional<BoundKind> kind);

void write_bench_table(std::ostream& out, const BenchReport& report);
/// Columns: subject,mean_ns,stddev_ns.
void write_bench_csv(std::ostream& out, const BenchReport& report);

}  // namespace cosim::bench
