#pragma once

#include "cosim/index/common.hpp"

namespace cosim::index {

/// Brute-force range query: every id with sim(q, x) >= tau.
std::vector<Neighbor> linear_scan_range(std::span<const UnitVector> data, const UnitVector& q, Similarity tau);

/// Brute-force k nearest (highest similarity). Throws BadKError unless
/// 1 <= k <= data.size().
std::vector<Neighbor> linear_scan_knn(std::span<const UnitVector> data, const UnitVector& q, std::size_t k);

}  // namespace cosim::index
