#include "cosim/simcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cosim/error.hpp"

namespace cosim {

Similarity::Similarity(double v) {
  if (std::isnan(v)) throw DomainError("similarity is NaN");
  value_ = std::clamp(v, -1.0, 1.0);
}

namespace {

void require_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw NonFiniteError("component " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace

DenseVector::DenseVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidVectorError("dense vector must have at least one component");
  require_finite(values_);
}

namespace {

std::vector<SparseVector::Index> split_indices(std::span<const SparseVector::Entry> entries) {
  std::vector<SparseVector::Index> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.first);
  return out;
}

std::vector<double> split_values(std::span<const SparseVector::Entry> entries) {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.second);
  return out;
}

}  // namespace

SparseVector::SparseVector(std::span<const Entry> entries)
    : SparseVector(split_indices(entries), split_values(entries)) {}

SparseVector::SparseVector(std::vector<Index> indices, std::vector<double> values)
    : indices_(std::move(indices)), values_(std::move(values)) {
  if (indices_.size() != values_.size()) {
    throw DimensionMismatchError(indices_.size(), values_.size());
  }
  require_finite(values_);
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (values_[i] == 0.0) {
      throw InvalidVectorError("explicit zero at index " + std::to_string(indices_[i]));
    }
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw InvalidVectorError("indices not strictly increasing at position " + std::to_string(i));
    }
  }
}

SparseVector SparseVector::from_dense(const DenseVector& v) {
  std::vector<Index> idx;
  std::vector<double> val;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) {
      idx.push_back(static_cast<Index>(i));
      val.push_back(v[i]);
    }
  }
  return SparseVector(std::move(idx), std::move(val));
}

DenseVector SparseVector::to_dense(std::size_t dim) const {
  if (dim < dimension_hint()) throw DimensionMismatchError(dim, dimension_hint());
  std::vector<double> out(dim, 0.0);
  for (std::size_t i = 0; i < indices_.size(); ++i) out[indices_[i]] = values_[i];
  return DenseVector(std::move(out));
}

double l2_norm(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v * v;
  if (std::isfinite(sum) && sum >= 1e-290) return std::sqrt(sum);
  // Over- or underflow: rescale by the largest magnitude.
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double scaled = 0.0;
  for (double v : values) {
    const double r = v / scale;
    scaled += r * r;
  }
  return scale * std::sqrt(scaled);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatchError(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double dot(const SparseVector& a, const SparseVector& b) {
  const auto ai = a.indices();
  const auto bi = b.indices();
  const auto av = a.values();
  const auto bv = b.values();
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ai.size() && j < bi.size()) {
    if (ai[i] < bi[j]) {
      ++i;
    } else if (bi[j] < ai[i]) {
      ++j;
    } else {
      sum += av[i] * bv[j];
      ++i;
      ++j;
    }
  }
  return sum;
}

namespace {

std::vector<double> scaled(std::span<const double> values, double norm) {
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v /= norm;
  return out;
}

void check_unit(double norm) {
  if (!(std::abs(norm - 1.0) <= UnitVector::kUnitTolerance)) {
    throw InvalidVectorError("vector norm " + std::to_string(norm) + " is not 1");
  }
}

}  // namespace

UnitVector normalize(const DenseVector& v) {
  const double norm = l2_norm(v);
  if (norm == 0.0) throw ZeroVectorError();
  if (!std::isfinite(norm)) throw NonFiniteError("vector norm is not finite");
  return UnitVector(DenseVector(scaled(v.values(), norm)));
}

UnitVector normalize(const SparseVector& v) {
  const double norm = l2_norm(v);
  if (norm == 0.0) throw ZeroVectorError();
  if (!std::isfinite(norm)) throw NonFiniteError("vector norm is not finite");
  auto idx = v.indices();
  return UnitVector(SparseVector(std::vector<SparseVector::Index>(idx.begin(), idx.end()), scaled(v.values(), norm)));
}

UnitVector UnitVector::certify(DenseVector v) {
  check_unit(l2_norm(v));
  return UnitVector(std::move(v));
}

UnitVector UnitVector::certify(SparseVector v) {
  check_unit(l2_norm(v));
  return UnitVector(std::move(v));
}

namespace {

template <typename Vec>
Similarity raw_cosine(const Vec& x, const Vec& y) {
  const double nx = l2_norm(x);
  const double ny = l2_norm(y);
  if (nx == 0.0 || ny == 0.0) throw ZeroVectorError();
  const double d = dot(x, y);
  const double denom = nx * ny;
  if (std::isfinite(d) && std::isfinite(denom) && denom > 0.0) return Similarity(d / denom);
  // Extreme magnitudes: normalize first.
  return cosine_similarity(normalize(x), normalize(y));
}

}  // namespace

Similarity cosine_similarity(const DenseVector& x, const DenseVector& y) {
  if (x.size() != y.size()) throw DimensionMismatchError(x.size(), y.size());
  return raw_cosine(x, y);
}

Similarity cosine_similarity(const SparseVector& x, const SparseVector& y) {
  return raw_cosine(x, y);
}

Similarity cosine_similarity(const UnitVector& x, const UnitVector& y) {
  if (x.is_dense() && y.is_dense()) return Similarity(dot(x.dense().values(), y.dense().values()));
  if (x.is_sparse() && y.is_sparse()) return Similarity(dot(x.sparse(), y.sparse()));
  throw RepresentationMismatchError();
}

double similarity_to_distance(DistanceKind kind, Similarity s) {
  const double v = s.value();
  switch (kind) {
    case DistanceKind::Cosine:
      return 1.0 - v;
    case DistanceKind::SqrtCosine:
      return std::sqrt(2.0 - 2.0 * v);
    case DistanceKind::Arccos:
      return std::acos(v);
  }
  return 0.0;
}

}  // namespace cosim
