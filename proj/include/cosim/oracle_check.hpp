#pragma once

// Index-versus-linear-scan equivalence run.
//
// For every query the VP-tree and the pivot table answer range queries at
// several thresholds and kNN queries at several k; each answer must equal
// the brute-force answer element for element (ids and bit-identical
// similarities, same order). Both indexes are also audited after build.

#include <cstdint>
#include <string>
#include <vector>

#include "cosim/index/common.hpp"

namespace cosim {

struct OracleCheckConfig {
  std::size_t queries = 50;
  std::uint64_t seed = 42;
  std::size_t k = 10;
  std::size_t leaf_capacity = 8;
  std::size_t pivots = 16;
  /// Range threshold is set per query so this fraction of points matches.
  double match_fraction = 0.01;
};

struct OracleCheckReport {
  std::size_t dataset_size = 0;
  std::size_t queries = 0;
  std::size_t comparisons = 0;
  std::size_t mismatches = 0;
  std::vector<std::string> failures;  ///< first few mismatch descriptions
  /// Mean sims_computed at the match_fraction threshold / at k.
  double vp_range_mean_sims = 0.0;
  double laesa_range_mean_sims = 0.0;
  double vp_knn_mean_sims = 0.0;
  double laesa_knn_mean_sims = 0.0;

  bool passed() const noexcept { return mismatches == 0; }
};

/// Threshold admitting ceil(fraction * n) points: the similarity of the
/// last of them in result order.
Similarity quantile_threshold(std::span<const UnitVector> data, const UnitVector& q, double fraction);

/// Queries are random directions (dense) or random re-weightings of a data
/// point's support (sparse), drawn from `config.seed`.
OracleCheckReport oracle_check(const index::Dataset& data, const OracleCheckConfig& config);

}  // namespace cosim
