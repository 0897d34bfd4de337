#pragma once

// Seeded synthetic datasets.

#include <cstdint>
#include <span>

#include "cosim/index/common.hpp"

namespace cosim::datagen {

/// Isotropic Gaussian directions, i.e. uniform on the unit sphere.
index::Dataset random_dense_unit(std::size_t n, std::size_t dim, std::uint64_t seed);

/// `nnz` distinct random indices below `dim`, Gaussian values.
index::Dataset random_sparse_unit(std::size_t n, std::size_t dim, std::size_t nnz, std::uint64_t seed);

/// (cos a, sin a) for an angle in degrees.
UnitVector planar(double degrees);
index::Dataset planar_dataset(std::span<const double> degrees);

}  // namespace cosim::datagen
