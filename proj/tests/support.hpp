#pragma once

// Seeded generators shared by the property tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cosim/simcore.hpp"

namespace cosim::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double sim() { return uniform(-1.0, 1.0); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::vector<double> gaussian(std::size_t dim) {
    std::normal_distribution<double> g;
    std::vector<double> v(dim);
    do {
      for (double& x : v) x = g(rng_);
    } while (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; }));
    return v;
  }

  UnitVector unit(std::size_t dim) { return normalize(DenseVector(gaussian(dim))); }

  SparseVector sparse(std::size_t dim, std::size_t nnz) {
    std::vector<SparseVector::Index> idx;
    while (idx.size() < nnz) {
      const auto i = static_cast<SparseVector::Index>(index(dim));
      if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end());
    std::vector<double> val;
    for (double x : gaussian(nnz)) val.push_back(x == 0.0 ? 1.0 : x);
    return SparseVector(std::move(idx), std::move(val));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Textbook cosine in long double, as an independent reference.
inline long double reference_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  long double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += static_cast<long double>(a[i]) * b[i];
    aa += static_cast<long double>(a[i]) * a[i];
    bb += static_cast<long double>(b[i]) * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

/// Largest change of f(a, b) when each input moves by up to `h` (staying in
/// [-1, 1]). Near +-1 the square-root terms make this much larger than h.
template <class F>
double input_sensitivity(F f, double a, double b, double h) {
  const double base = f(a, b);
  double worst = 0.0;
  for (double da : {-h, 0.0, h}) {
    for (double db : {-h, 0.0, h}) {
      const double pa = std::clamp(a + da, -1.0, 1.0);
      const double pb = std::clamp(b + db, -1.0, 1.0);
      worst = std::max(worst, std::abs(f(pa, pb) - base));
    }
  }
  return worst;
}

/// Input error assumed for a computed similarity of unit vectors.
inline constexpr double kSimilarityInputError = 4.0 * 2.220446049250313e-16;

}  // namespace cosim::testing
