#pragma once

// Vector representations and cosine similarity.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace cosim {

/// Cosine similarity value, clamped into [-1, 1] on construction.
///
/// Floating-point dot products of near-parallel unit vectors can overshoot 1
/// by an ulp or two; clamping keeps arccos and the bound formulas in domain.
/// NaN is rejected with DomainError.
class Similarity {
 public:
  constexpr Similarity() = default;
  explicit Similarity(double v);

  constexpr double value() const noexcept { return value_; }
  constexpr explicit operator double() const noexcept { return value_; }

  friend constexpr auto operator<=>(Similarity, Similarity) = default;

 private:
  double value_ = 0.0;
};

/// Dense real vector. Non-empty, all components finite.
class DenseVector {
 public:
  explicit DenseVector(std::vector<double> values);
  DenseVector(std::initializer_list<double> values) : DenseVector(std::vector<double>(values)) {}

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<double> values_;
};

/// Sparse vector stored as parallel arrays of strictly increasing indices and
/// non-zero finite values.
class SparseVector {
 public:
  using Index = std::uint32_t;
  using Entry = std::pair<Index, double>;

  SparseVector() = default;
  explicit SparseVector(std::span<const Entry> entries);
  SparseVector(std::initializer_list<Entry> entries)
      : SparseVector(std::span<const Entry>(entries.begin(), entries.size())) {}
  SparseVector(std::vector<Index> indices, std::vector<double> values);

  /// Drops zero components.
  static SparseVector from_dense(const DenseVector& v);

  std::span<const Index> indices() const noexcept { return indices_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t nnz() const noexcept { return indices_.size(); }
  /// One past the largest stored index (0 when empty).
  std::size_t dimension_hint() const noexcept { return indices_.empty() ? 0 : indices_.back() + 1; }

  DenseVector to_dense(std::size_t dim) const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Index> indices_;
  std::vector<double> values_;
};

/// A dense or sparse vector whose L2 norm is 1 within kUnitTolerance.
class UnitVector {
 public:
  static constexpr double kUnitTolerance = 1e-9;

  /// Wraps a vector that is already normalized; throws InvalidVectorError
  /// if |norm - 1| exceeds kUnitTolerance.
  static UnitVector certify(DenseVector v);
  static UnitVector certify(SparseVector v);

  bool is_dense() const noexcept { return std::holds_alternative<DenseVector>(inner_); }
  bool is_sparse() const noexcept { return !is_dense(); }
  const DenseVector& dense() const { return std::get<DenseVector>(inner_); }
  const SparseVector& sparse() const { return std::get<SparseVector>(inner_); }
  const std::variant<DenseVector, SparseVector>& inner() const noexcept { return inner_; }

  friend bool operator==(const UnitVector&, const UnitVector&) = default;

 private:
  explicit UnitVector(DenseVector v) : inner_(std::move(v)) {}
  explicit UnitVector(SparseVector v) : inner_(std::move(v)) {}

  friend UnitVector normalize(const DenseVector& v);
  friend UnitVector normalize(const SparseVector& v);

  std::variant<DenseVector, SparseVector> inner_;
};

double l2_norm(std::span<const double> values);
inline double l2_norm(const DenseVector& v) { return l2_norm(v.values()); }
inline double l2_norm(const SparseVector& v) { return l2_norm(v.values()); }

/// Plain left-to-right dot product. Lengths must match.
double dot(std::span<const double> a, std::span<const double> b);

inline double dot(const DenseVector& a, const DenseVector& b) { return dot(a.values(), b.values()); }

/// Two-cursor merge over the index intersection.
double dot(const SparseVector& a, const SparseVector& b);

/// Scales v by 1/||v||. Throws ZeroVectorError for the zero vector.
UnitVector normalize(const DenseVector& v);
UnitVector normalize(const SparseVector& v);

Similarity cosine_similarity(const DenseVector& x, const DenseVector& y);
Similarity cosine_similarity(const SparseVector& x, const SparseVector& y);
/// Dot product only; both operands must share a representation.
Similarity cosine_similarity(const UnitVector& x, const UnitVector& y);

enum class DistanceKind { Cosine, SqrtCosine, Arccos };

/// 1-s, sqrt(2-2s), or arccos(s). Only the latter two are metrics.
double similarity_to_distance(DistanceKind kind, Similarity s);

}  // namespace cosim
