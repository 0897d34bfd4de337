#pragma once

// Vantage-point tree searched directly in the similarity domain.
//
// Each internal node holds a routing object z and, per child, the exact
// [min, max] similarity of the child's members to z. A query with
// s_qz = sim(q, z) can skip a child whose best_case_similarity(s_qz, band)
// falls below the threshold: by the upper triangle bound no member can
// reach it.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "cosim/bounds.hpp"
#include "cosim/index/common.hpp"

namespace cosim::index {

struct VpConfig {
  std::size_t leaf_capacity = 8;
  std::uint64_t seed = 42;
  double prune_slack = kDefaultPruneSlack;

  friend bool operator==(const VpConfig&, const VpConfig&) = default;
};

struct VpChild {
  SimInterval interval;
  std::uint32_t node = 0;

  friend bool operator==(const VpChild&, const VpChild&) = default;
};

struct VpNode {
  static constexpr Id kNoRouting = std::numeric_limits<Id>::max();

  Id routing_id = kNoRouting;
  std::vector<VpChild> children;  // inner (higher-similarity) child first
  std::vector<Id> leaf_ids;
  std::size_t subtree_size = 0;

  bool is_leaf() const noexcept { return children.empty(); }

  friend bool operator==(const VpNode&, const VpNode&) = default;
};

class VpTree {
 public:
  /// Deterministic for a fixed config. Partitions of at most
  /// max(leaf_capacity, 2) points become leaves, so every internal node has
  /// two children. Throws EmptyDatasetError, InvalidVectorError on mixed
  /// representations, or std::invalid_argument for leaf_capacity 0.
  static VpTree build(Dataset data, VpConfig config = {});

  /// Reassembles a tree from persisted parts; throws FormatError if the
  /// structure or any stored interval fails audit().
  static VpTree from_parts(Dataset data, VpConfig config, std::vector<VpNode> nodes);

  /// All ids with sim(q, x) >= tau, best first.
  QueryResult range_query(const UnitVector& q, Similarity tau, QueryTrace* trace = nullptr) const;

  /// The k most similar ids, best first, visiting subtrees in decreasing
  /// best-case order. Throws BadKError unless 1 <= k <= size().
  QueryResult knn_query(const UnitVector& q, std::size_t k, QueryTrace* trace = nullptr) const;

  const Dataset& data() const noexcept { return data_; }
  const VpConfig& config() const noexcept { return config_; }
  std::span<const VpNode> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::size_t height() const;

  /// Ids stored anywhere below `node` (routing objects included).
  std::vector<Id> subtree_ids(std::uint32_t node) const;

  /// Re-derives every structural invariant and every interval from the data.
  /// Returns a description of the first violation, or nullopt.
  std::optional<std::string> audit() const;

 private:
  VpTree(Dataset data, VpConfig config) : data_(std::move(data)), config_(config) {}

  Dataset data_;
  VpConfig config_;
  std::vector<VpNode> nodes_;  // root at 0
};

}  // namespace cosim::index
