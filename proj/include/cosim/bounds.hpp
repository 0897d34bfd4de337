#pragma once

// Triangle inequalities for cosine similarity.
//
// Given s1 = sim(x,z) and s2 = sim(z,y), every lower bound below satisfies
// bound(s1, s2) <= sim(x,y). Mult is tight (it equals cos(a1 + a2) with
// a_i = arccos s_i); the others trade tightness for cheaper arithmetic.
// upper_bound is the reverse inequality, cos(a1 - a2).

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string_view>

#include "cosim/simcore.hpp"

namespace cosim {

enum class BoundKind { Euclidean, EuclLB, Arccos, Mult, MultVariant, MultLB1, MultLB2 };

inline constexpr std::array<BoundKind, 7> kAllBoundKinds = {
    BoundKind::Euclidean, BoundKind::EuclLB,  BoundKind::Arccos,  BoundKind::Mult,
    BoundKind::MultVariant, BoundKind::MultLB1, BoundKind::MultLB2,
};

std::string_view to_string(BoundKind kind);
/// Accepts the canonical names ("mult-lb1") case-insensitively, with or
/// without '-' / '_' separators.
std::optional<BoundKind> parse_bound_kind(std::string_view name);

/// Unchecked scalar formulas. Inputs are assumed to lie in [-1, 1]; results
/// are returned raw (Euclidean reaches -7 at (-1, -1)).
namespace formula {

/// From the chord-length (Euclidean) triangle inequality.
inline double euclidean(double a, double b) {
  return a + b - 1.0 - 2.0 * std::sqrt((1.0 - a) * (1.0 - b));
}

/// Euclidean with the square root replaced by the smaller similarity.
inline double eucl_lb(double a, double b) {
  return a + b + 2.0 * std::min(a, b) - 3.0;
}

/// cos(arccos a + arccos b), evaluated with trig.
inline double arccos(double a, double b) {
  return std::cos(std::acos(std::clamp(a, -1.0, 1.0)) + std::acos(std::clamp(b, -1.0, 1.0)));
}

inline double mult(double a, double b) {
  return a * b - std::sqrt((1.0 - a * a) * (1.0 - b * b));
}

/// Mult with (1 - s^2) expanded as (1 + s)(1 - s).
inline double mult_variant(double a, double b) {
  return a * b - std::sqrt(((1.0 + a) * (1.0 - a)) * ((1.0 + b) * (1.0 - b)));
}

inline double mult_lb1(double a, double b) {
  return a * b + std::min(a * a, b * b) - 1.0;
}

inline double mult_lb2(double a, double b) {
  return 2.0 * a * b - std::abs(a - b) - 1.0;
}

inline double upper(double a, double b) {
  return a * b + std::sqrt((1.0 - a * a) * (1.0 - b * b));
}

inline double lower(BoundKind kind, double a, double b) {
  switch (kind) {
    case BoundKind::Euclidean: return euclidean(a, b);
    case BoundKind::EuclLB: return eucl_lb(a, b);
    case BoundKind::Arccos: return arccos(a, b);
    case BoundKind::Mult: return mult(a, b);
    case BoundKind::MultVariant: return mult_variant(a, b);
    case BoundKind::MultLB1: return mult_lb1(a, b);
    case BoundKind::MultLB2: return mult_lb2(a, b);
  }
  return -1.0;
}

}  // namespace formula

double lower_bound(BoundKind kind, Similarity s1, Similarity s2);
/// Throws DomainError unless both inputs lie in [-1, 1].
double lower_bound(BoundKind kind, double s1, double s2);

double upper_bound(Similarity s1, Similarity s2);
double upper_bound(double s1, double s2);

/// Range [lo, hi] of the similarities between a set of points and a routing
/// object. Endpoints are similarities, not angles, so containment tests need
/// no trig.
class SimInterval {
 public:
  /// Throws DomainError if lo > hi.
  SimInterval(Similarity lo, Similarity hi);
  SimInterval(double lo, double hi) : SimInterval(Similarity(lo), Similarity(hi)) {}

  Similarity lo() const noexcept { return lo_; }
  Similarity hi() const noexcept { return hi_; }
  bool contains(Similarity s) const noexcept { return lo_ <= s && s <= hi_; }

  friend bool operator==(const SimInterval&, const SimInterval&) = default;

 private:
  Similarity lo_;
  Similarity hi_;
};

/// Largest similarity any point in the band can have to the query, given the
/// query's similarity s_qz to the routing object.
Similarity best_case_similarity(Similarity s_qz, const SimInterval& iv);

/// Smallest similarity any point in the band can have to the query.
Similarity worst_case_similarity(Similarity s_qz, const SimInterval& iv);

}  // namespace cosim
