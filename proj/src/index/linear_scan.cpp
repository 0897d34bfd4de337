#include "cosim/index/linear_scan.hpp"

#include "cosim/error.hpp"

namespace cosim::index {

std::vector<Neighbor> linear_scan_range(std::span<const UnitVector> data, const UnitVector& q, Similarity tau) {
  std::vector<Neighbor> out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Similarity s = cosine_similarity(q, data[i]);
    if (s >= tau) out.push_back({static_cast<Id>(i), s});
  }
  sort_results(out);
  return out;
}

std::vector<Neighbor> linear_scan_knn(std::span<const UnitVector> data, const UnitVector& q, std::size_t k) {
  if (k < 1 || k > data.size()) throw BadKError(k, data.size());
  TopK top(k);
  for (std::size_t i = 0; i < data.size(); ++i) {
    top.offer({static_cast<Id>(i), cosine_similarity(q, data[i])});
  }
  return std::move(top).take();
}

}  // namespace cosim::index
