#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cosim/simcore.hpp"

namespace cosim::index {

using Id = std::uint32_t;
using Dataset = std::vector<UnitVector>;

/// Margin subtracted from the pruning threshold before a subtree or candidate
/// is discarded. Near sim = +-1 an input error of d in a similarity moves the
/// implied angle by about sqrt(2d), so bounds built from computed similarities
/// can undershoot the exact one by ~1e-7 for normalized data.
inline constexpr double kDefaultPruneSlack = 1e-6;

struct Neighbor {
  Id id = 0;
  Similarity sim;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Result order: similarity descending, then id ascending.
inline bool ranks_before(const Neighbor& a, const Neighbor& b) noexcept {
  if (a.sim != b.sim) return a.sim > b.sim;
  return a.id < b.id;
}

struct QueryStats {
  std::size_t sims_computed = 0;
  std::size_t nodes_pruned = 0;
  std::size_t candidates_filtered = 0;

  friend bool operator==(const QueryStats&, const QueryStats&) = default;
};

struct QueryResult {
  std::vector<Neighbor> neighbors;
  QueryStats stats;
};

/// Optional per-query record of pruning decisions, for audits and
/// determinism checks. Node ids are VpTree node indices; for LAESA the
/// pruned entries are candidate object ids.
struct QueryTrace {
  std::vector<std::uint32_t> visited;
  std::vector<std::uint32_t> pruned;

  friend bool operator==(const QueryTrace&, const QueryTrace&) = default;
};

void sort_results(std::vector<Neighbor>& results);

/// Fixed-capacity collection of the best k neighbors seen so far.
class TopK {
 public:
  explicit TopK(std::size_t k);

  void offer(Neighbor n);
  bool full() const noexcept { return heap_.size() == k_; }
  /// Similarity of the current k-th best; -infinity until full.
  double kth_similarity() const noexcept;
  /// Sorted best-first.
  std::vector<Neighbor> take() &&;

 private:
  std::size_t k_;
  std::vector<Neighbor> heap_;  // worst-ranked element at front
};

}  // namespace cosim::index
