#include "cosim/index/common.hpp"

#include <algorithm>
#include <limits>

namespace cosim::index {

void sort_results(std::vector<Neighbor>& results) { std::ranges::sort(results, ranks_before); }

TopK::TopK(std::size_t k) : k_(k) { heap_.reserve(k); }

void TopK::offer(Neighbor n) {
  // Max-heap on ranks_before puts the worst-ranked neighbor at the front.
  if (heap_.size() < k_) {
    heap_.push_back(n);
    std::ranges::push_heap(heap_, ranks_before);
  } else if (k_ > 0 && ranks_before(n, heap_.front())) {
    std::ranges::pop_heap(heap_, ranks_before);
    heap_.back() = n;
    std::ranges::push_heap(heap_, ranks_before);
  }
}

double TopK::kth_similarity() const noexcept {
  if (!full() || k_ == 0) return -std::numeric_limits<double>::infinity();
  return heap_.front().sim.value();
}

std::vector<Neighbor> TopK::take() && {
  sort_results(heap_);
  return std::move(heap_);
}

}  // namespace cosim::index
