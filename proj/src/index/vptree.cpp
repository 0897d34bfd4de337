#include "cosim/index/vptree.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <random>
#include <stdexcept>

#include "cosim/error.hpp"

namespace cosim::index {

namespace {

struct Scored {
  Id id;
  Similarity sim;
};

class Builder {
 public:
  Builder(const Dataset& data, const VpConfig& config, std::vector<VpNode>& nodes)
      : data_(data), leaf_limit_(std::max<std::size_t>(config.leaf_capacity, 2)), rng_(config.seed), nodes_(nodes) {}

  std::uint32_t build(std::vector<Id> ids) {
    const auto index = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    nodes_[index].subtree_size = ids.size();
    if (ids.size() <= leaf_limit_) {
      std::ranges::sort(ids);
      nodes_[index].leaf_ids = std::move(ids);
      return index;
    }

    std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
    const std::size_t at = pick(rng_);
    const Id routing = ids[at];
    ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(at));

    std::vector<Scored> scored;
    scored.reserve(ids.size());
    for (Id id : ids) scored.push_back({id, cosine_similarity(data_[routing], data_[id])});
    std::ranges::sort(scored, [](const Scored& a, const Scored& b) {
      if (a.sim != b.sim) return a.sim > b.sim;
      return a.id < b.id;
    });

    // Members equal to the median go to the lower-similarity child.
    const Similarity median = scored[(scored.size() - 1) / 2].sim;
    auto split = std::ranges::find_if(scored, [&](const Scored& s) { return s.sim <= median; });
    if (split == scored.begin()) {
      // Ties at the top; fall back to a positional split.
      split = scored.begin() + static_cast<std::ptrdiff_t>((scored.size() + 1) / 2);
    }

    const std::vector<Scored> inner(scored.begin(), split);
    const std::vector<Scored> outer(split, scored.end());
    nodes_[index].routing_id = routing;
    for (const auto* part : {&inner, &outer}) {
      const SimInterval band(part->back().sim, part->front().sim);
      std::vector<Id> child_ids;
      child_ids.reserve(part->size());
      for (const auto& s : *part) child_ids.push_back(s.id);
      const std::uint32_t child = build(std::move(child_ids));
      nodes_[index].children.push_back({band, child});
    }
    return index;
  }

 private:
  const Dataset& data_;
  std::size_t leaf_limit_;
  std::mt19937_64 rng_;
  std::vector<VpNode>& nodes_;
};

void check_representation(const Dataset& data) {
  for (const auto& v : data) {
    if (v.is_dense() != data.front().is_dense()) throw RepresentationMismatchError();
    if (v.is_dense() && v.dense().size() != data.front().dense().size()) {
      throw DimensionMismatchError(v.dense().size(), data.front().dense().size());
    }
  }
}

}  // namespace

VpTree VpTree::build(Dataset data, VpConfig config) {
  if (data.empty()) throw EmptyDatasetError();
  if (config.leaf_capacity < 1) throw std::invalid_argument("leaf_capacity must be at least 1");
  check_representation(data);

  VpTree tree(std::move(data), config);
  std::vector<Id> ids(tree.data_.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<Id>(i);
  Builder(tree.data_, tree.config_, tree.nodes_).build(std::move(ids));
  return tree;
}

VpTree VpTree::from_parts(Dataset data, VpConfig config, std::vector<VpNode> nodes) {
  if (data.empty()) throw EmptyDatasetError();
  check_representation(data);
  VpTree tree(std::move(data), config);
  tree.nodes_ = std::move(nodes);
  if (auto problem = tree.audit()) throw FormatError("invalid tree: " + *problem);
  return tree;
}

QueryResult VpTree::range_query(const UnitVector& q, Similarity tau, QueryTrace* trace) const {
  QueryResult result;
  auto& stats = result.stats;
  const double threshold = tau.value() - config_.prune_slack;

  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    const VpNode& node = nodes_[stack.back()];
    if (trace) trace->visited.push_back(stack.back());
    stack.pop_back();

    if (node.is_leaf()) {
      for (Id id : node.leaf_ids) {
        const Similarity s = cosine_similarity(q, data_[id]);
        ++stats.sims_computed;
        if (s >= tau) result.neighbors.push_back({id, s});
      }
      continue;
    }

    const Similarity s_qz = cosine_similarity(q, data_[node.routing_id]);
    ++stats.sims_computed;
    if (s_qz >= tau) result.neighbors.push_back({node.routing_id, s_qz});

    // Reverse push so the inner child is explored first.
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
      if (best_case_similarity(s_qz, it->interval).value() < threshold) {
        ++stats.nodes_pruned;
        stats.candidates_filtered += nodes_[it->node].subtree_size;
        if (trace) trace->pruned.push_back(it->node);
      } else {
        stack.push_back(it->node);
      }
    }
  }
  sort_results(result.neighbors);
  return result;
}

QueryResult VpTree::knn_query(const UnitVector& q, std::size_t k, QueryTrace* trace) const {
  if (k < 1 || k > data_.size()) throw BadKError(k, data_.size());

  struct Pending {
    double priority;
    std::uint32_t node;
  };
  // Highest best-case first; lower node index breaks ties.
  auto lower_priority = [](const Pending& a, const Pending& b) {
    if (a.priority != b.priority) return a.priority < b.priority;
    return a.node > b.node;
  };
  std::priority_queue<Pending, std::vector<Pending>, decltype(lower_priority)> queue(lower_priority);
  queue.push({1.0, 0});

  QueryResult result;
  auto& stats = result.stats;
  TopK top(k);
  auto prune = [&](std::uint32_t node) {
    ++stats.nodes_pruned;
    stats.candidates_filtered += nodes_[node].subtree_size;
    if (trace) trace->pruned.push_back(node);
  };

  while (!queue.empty()) {
    const Pending next = queue.top();
    queue.pop();
    if (top.full() && next.priority < top.kth_similarity() - config_.prune_slack) {
      // Everything still queued has an even lower best case.
      prune(next.node);
      while (!queue.empty()) {
        prune(queue.top().node);
        queue.pop();
      }
      break;
    }

    const VpNode& node = nodes_[next.node];
    if (trace) trace->visited.push_back(next.node);
    if (node.is_leaf()) {
      for (Id id : node.leaf_ids) {
        top.offer({id, cosine_similarity(q, data_[id])});
        ++stats.sims_computed;
      }
      continue;
    }

    const Similarity s_qz = cosine_similarity(q, data_[node.routing_id]);
    ++stats.sims_computed;
    top.offer({node.routing_id, s_qz});
    for (const auto& child : node.children) {
      const double best = best_case_similarity(s_qz, child.interval).value();
      if (top.full() && best < top.kth_similarity() - config_.prune_slack) {
        prune(child.node);
      } else {
        queue.push({best, child.node});
      }
    }
  }
  result.neighbors = std::move(top).take();
  return result;
}

std::size_t VpTree::height() const {
  std::function<std::size_t(std::uint32_t)> depth = [&](std::uint32_t n) -> std::size_t {
    std::size_t deepest = 0;
    for (const auto& c : nodes_[n].children) deepest = std::max(deepest, depth(c.node));
    return deepest + 1;
  };
  return depth(0);
}

std::vector<Id> VpTree::subtree_ids(std::uint32_t node) const {
  std::vector<Id> out;
  std::vector<std::uint32_t> stack{node};
  while (!stack.empty()) {
    const VpNode& n = nodes_[stack.back()];
    stack.pop_back();
    if (n.is_leaf()) {
      out.insert(out.end(), n.leaf_ids.begin(), n.leaf_ids.end());
    } else {
      out.push_back(n.routing_id);
      for (const auto& c : n.children) stack.push_back(c.node);
    }
  }
  std::ranges::sort(out);
  return out;
}

std::optional<std::string> VpTree::audit() const {
  if (nodes_.empty()) return "tree has no nodes";

  // Structure first, so the interval pass below cannot loop on a cycle.
  std::vector<int> seen(data_.size(), 0);
  std::vector<int> reached(nodes_.size(), 0);
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    const std::uint32_t index = stack.back();
    stack.pop_back();
    if (reached[index]++ > 0) return "node " + std::to_string(index) + " reachable twice";
    const VpNode& node = nodes_[index];

    if (node.is_leaf()) {
      if (node.routing_id != VpNode::kNoRouting) return "leaf " + std::to_string(index) + " has a routing object";
      for (Id id : node.leaf_ids) {
        if (id >= data_.size()) return "id out of range";
        ++seen[id];
      }
      continue;
    }
    if (node.children.size() < 2) return "internal node " + std::to_string(index) + " has fewer than 2 children";
    if (node.routing_id >= data_.size()) return "routing id out of range";
    if (!node.leaf_ids.empty()) return "internal node " + std::to_string(index) + " stores leaf ids";
    ++seen[node.routing_id];
    for (const auto& child : node.children) {
      if (child.node >= nodes_.size()) return "child index out of range";
      stack.push_back(child.node);
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] != 1) return "id " + std::to_string(i) + " stored " + std::to_string(seen[i]) + " times";
  }
  for (std::size_t i = 0; i < reached.size(); ++i) {
    if (reached[i] == 0) return "node " + std::to_string(i) + " unreachable";
  }

  for (std::uint32_t index = 0; index < nodes_.size(); ++index) {
    const VpNode& node = nodes_[index];
    if (node.subtree_size != subtree_ids(index).size()) return "wrong subtree size at node " + std::to_string(index);
    for (const auto& child : node.children) {
      for (Id id : subtree_ids(child.node)) {
        const Similarity s = cosine_similarity(data_[node.routing_id], data_[id]);
        if (!child.interval.contains(s)) {
          return "id " + std::to_string(id) + " escapes interval of child " + std::to_string(child.node);
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace cosim::index
