#pragma once

// Grid evaluation of the bound formulas: surfaces, difference surfaces,
// average-bound statistics, the ordering lattice, and the Mult/Arccos
// numerical agreement.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cosim/bounds.hpp"

namespace cosim::analysis {

/// Square grid over [lo, hi]^2 with `steps` points per axis, endpoints included.
struct GridSpec {
  double lo = -1.0;
  double hi = 1.0;
  std::size_t steps = 2001;

  /// Throws std::invalid_argument unless -1 <= lo < hi <= 1 and steps >= 2.
  void validate() const;
  /// i-th grid coordinate; exact at both endpoints.
  double at(std::size_t i) const noexcept {
    if (i + 1 == steps) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

/// Dense row-major matrix; row index follows s1, column index s2.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * cols_ + c]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

/// cell(i, j) = lower_bound(kind, s1_i, s2_j), raw.
Matrix surface(BoundKind kind, const GridSpec& spec);

enum class DifferenceMode {
  Raw,      ///< lower_bound(a) - lower_bound(b)
  Clamped,  ///< both bounds floored at -1 first (nothing below -1 is informative)
};

Matrix difference_surface(BoundKind a, BoundKind b, const GridSpec& spec, DifferenceMode mode = DifferenceMode::Raw);

struct GridCell {
  double value = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
};

/// Largest cell (first in row-major order on ties).
GridCell max_cell(const Matrix& m, const GridSpec& spec);
GridCell max_abs_cell(const Matrix& m, const GridSpec& spec);

/// CSV with header "s1,s2,value", one row per cell, round-trip exact decimals.
void write_surface_csv(std::ostream& out, const Matrix& m, const GridSpec& spec);

struct SurfaceRow {
  double s1;
  double s2;
  double value;
};
std::vector<SurfaceRow> read_surface_csv(std::istream& in);

/// Counts the ordering relations violated at (s1, s2):
///   EuclLB <= Euclidean <= Mult,  EuclLB <= MultLB2 <= MultLB1 <= Mult.
/// A relation counts as violated only if it fails by more than `ulps` units
/// of roundoff, i.e. ulps * epsilon * max(1, |lhs|, |rhs|). Where two bounds
/// coincide (s1 = s2, s1 = 1, ...) their closed forms round differently.
inline constexpr double kOrderingUlps = 4.0;
int ordering_violations(double s1, double s2, double ulps = kOrderingUlps);
std::size_t count_ordering_violations(const GridSpec& spec, double ulps = kOrderingUlps);
/// Uniform random pairs on [-1, 1]^2.
std::size_t count_ordering_violations_random(std::size_t pairs, std::uint64_t seed, double ulps = kOrderingUlps);

struct GridReport {
  GridSpec spec;
  /// Means over the cells with s1 >= 0, s2 >= 0 and a non-negative Arccos
  /// bound; the Euclidean bound enters raw.
  double euclid_mean = 0.0;
  double arccos_mean = 0.0;
  double ratio = 0.0;  ///< arccos_mean / euclid_mean - 1
  std::size_t cells = 0;
  /// Means over the cells where both bounds are non-negative.
  double both_nonneg_euclid_mean = 0.0;
  double both_nonneg_arccos_mean = 0.0;
  std::size_t both_nonneg_cells = 0;
  /// max (Arccos - Euclidean) with both floored at -1, over cells with s1, s2 >= 0.
  double max_arccos_minus_euclid = 0.0;
  double max_mult_arccos_diff = 0.0;
  std::size_t ordering_violations = 0;
};

GridReport average_report(const GridSpec& spec);

struct StabilityReport {
  GridCell max_mult_vs_arccos;     ///< max |Mult - Arccos|
  GridCell max_variant_vs_mult;    ///< max |MultVariant - Mult|
};

StabilityReport stability_report(const GridSpec& spec);
/// Same maxima restricted to the diagonal s1 = s2.
StabilityReport stability_report_diagonal(const GridSpec& spec);

/// "key,value" lines.
void write_report_csv(std::ostream& out, const GridReport& report);
void write_report_csv(std::ostream& out, const StabilityReport& report);

}  // namespace cosim::analysis
