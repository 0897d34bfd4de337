#include "cosim/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cosim::datagen {

index::Dataset random_dense_unit(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("dim must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  index::Dataset out;
  out.reserve(n);
  while (out.size() < n) {
    std::vector<double> v(dim);
    for (double& x : v) x = gauss(rng);
    if (std::ranges::all_of(v, [](double x) { return x == 0.0; })) continue;
    out.push_back(normalize(DenseVector(std::move(v))));
  }
  return out;
}

index::Dataset random_sparse_unit(std::size_t n, std::size_t dim, std::size_t nnz, std::uint64_t seed) {
  if (nnz == 0 || nnz > dim) throw std::invalid_argument("nnz must lie in [1, dim]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(dim - 1));
  index::Dataset out;
  out.reserve(n);
  while (out.size() < n) {
    std::vector<SparseVector::Index> idx;
    while (idx.size() < nnz) {
      const auto i = pick(rng);
      if (std::ranges::find(idx, i) == idx.end()) idx.push_back(i);
    }
    std::ranges::sort(idx);
    std::vector<double> val(nnz);
    for (double& x : val) {
      do {
        x = gauss(rng);
      } while (x == 0.0);
    }
    out.push_back(normalize(SparseVector(std::move(idx), std::move(val))));
  }
  return out;
}

UnitVector planar(double degrees) {
  const double rad = degrees * std::numbers::pi / 180.0;
  return normalize(DenseVector{std::cos(rad), std::sin(rad)});
}

index::Dataset planar_dataset(std::span<const double> degrees) {
  index::Dataset out;
  for (double d : degrees) out.push_back(planar(d));
  return out;
}

}  // namespace cosim::datagen
