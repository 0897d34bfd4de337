#pragma once

// Pivot table filter (LAESA layout) for cosine similarity.
//
// Every object's similarity to m pivots is precomputed. At query time the
// m query-pivot similarities give, through the upper triangle bound, a cap
// on each object's similarity to the query; objects whose cap misses the
// threshold are never compared.

#include <cstdint>
#include <optional>
#include <string>

#include "cosim/index/common.hpp"

namespace cosim::index {

class PivotTable {
 public:
  PivotTable() = default;
  /// `table` is row-major, objects x pivots. Throws FormatError on shape errors.
  PivotTable(std::vector<Id> pivot_ids, std::size_t objects, std::vector<double> table);

  std::span<const Id> pivot_ids() const noexcept { return pivot_ids_; }
  std::size_t pivots() const noexcept { return pivot_ids_.size(); }
  std::size_t objects() const noexcept { return objects_; }
  std::span<const double> row(std::size_t object) const noexcept {
    return std::span<const double>(table_).subspan(object * pivots(), pivots());
  }
  Similarity at(std::size_t object, std::size_t pivot) const { return Similarity(table_[object * pivots() + pivot]); }
  std::span<const double> raw() const noexcept { return table_; }
  bool is_pivot(Id id) const noexcept { return id < pivot_rank_.size() && pivot_rank_[id] >= 0; }

  friend bool operator==(const PivotTable& a, const PivotTable& b) {
    return a.pivot_ids_ == b.pivot_ids_ && a.objects_ == b.objects_ && a.table_ == b.table_;
  }

 private:
  std::vector<Id> pivot_ids_;
  std::size_t objects_ = 0;
  std::vector<double> table_;
  std::vector<int> pivot_rank_;  // -1 for non-pivots
};

/// Chooses m pivots by farthest-first traversal (next pivot = object whose
/// highest similarity to the chosen pivots is lowest, ties to the lower id)
/// from a seeded random start, then fills the n x m table.
/// Throws EmptyDatasetError or BadPivotCountError.
PivotTable laesa_build(std::span<const UnitVector> data, std::size_t m, std::uint64_t seed);

/// Exact range query. sims_computed = m + number of surviving non-pivot
/// candidates; pivots are answered from the query-pivot similarities.
QueryResult laesa_range_query(const PivotTable& table, std::span<const UnitVector> data, const UnitVector& q,
                              Similarity tau, double prune_slack = kDefaultPruneSlack, QueryTrace* trace = nullptr);

/// Exact kNN: candidates are verified in decreasing order of their bound
/// until the bound drops below the current k-th best.
QueryResult laesa_knn_query(const PivotTable& table, std::span<const UnitVector> data, const UnitVector& q,
                            std::size_t k, double prune_slack = kDefaultPruneSlack, QueryTrace* trace = nullptr);

/// Recomputes every entry; reports the first mismatch (tolerance 1e-12).
std::optional<std::string> audit(const PivotTable& table, std::span<const UnitVector> data);

/// Dataset plus its pivot table, for callers that want one owning object.
struct LaesaIndex {
  Dataset data;
  PivotTable table;
  std::uint64_t seed = 0;
  double prune_slack = kDefaultPruneSlack;

  static LaesaIndex build(Dataset data, std::size_t m, std::uint64_t seed, double prune_slack = kDefaultPruneSlack);

  QueryResult range_query(const UnitVector& q, Similarity tau, QueryTrace* trace = nullptr) const {
    return laesa_range_query(table, data, q, tau, prune_slack, trace);
  }
  QueryResult knn_query(const UnitVector& q, std::size_t k, QueryTrace* trace = nullptr) const {
    return laesa_knn_query(table, data, q, k, prune_slack, trace);
  }
};

}  // namespace cosim::index
