#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cosim/bounds.hpp"
#include "cosim/error.hpp"
#include "support.hpp"

using namespace cosim;
using cosim::testing::Gen;

namespace {

// cos(arccos s1 + arccos s2), capped at cos(pi) when the angles exceed pi.
double angle_sum_oracle(double s1, double s2) {
  const double t = std::acos(s1) + std::acos(s2);
  return t >= std::numbers::pi ? -1.0 : std::cos(t);
}

// Maximum of cos(theta_q - theta) over theta in the band, by sampling.
double sampled_best(double s_qz, double lo, double hi, int samples = 200000) {
  const double tq = std::acos(s_qz);
  const double a = std::acos(hi);
  const double b = std::acos(lo);
  double best = -2.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = a + (b - a) * i / samples;
    best = std::max(best, std::cos(tq - t));
  }
  return best;
}

double sampled_worst(double s_qz, double lo, double hi, int samples = 200000) {
  const double tq = std::acos(s_qz);
  const double a = std::acos(hi);
  const double b = std::acos(lo);
  double worst = 2.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = a + (b - a) * i / samples;
    worst = std::min(worst, std::cos(tq + t));
  }
  return worst;
}

}  // namespace

TEST(BoundKind, NamesRoundTrip) {
  for (auto kind : kAllBoundKinds) EXPECT_EQ(parse_bound_kind(to_string(kind)), kind);
  EXPECT_EQ(parse_bound_kind("MULT_LB1"), BoundKind::MultLB1);
  EXPECT_EQ(parse_bound_kind("multvariant"), BoundKind::MultVariant);
  EXPECT_FALSE(parse_bound_kind("cosine").has_value());
}

TEST(LowerBound, TableValues) {
  EXPECT_NEAR(lower_bound(BoundKind::Mult, 1.0, 0.7), 0.7, 1e-15);
  EXPECT_EQ(lower_bound(BoundKind::Euclidean, 0.5, 0.5), -1.0);
  EXPECT_NEAR(lower_bound(BoundKind::Mult, 0.5, 0.5), -0.5, 1e-15);
  EXPECT_NEAR(lower_bound(BoundKind::Arccos, 0.5, 0.5), -0.5, 1e-15);
  EXPECT_NEAR(lower_bound(BoundKind::Mult, -1.0, -1.0), 1.0, 1e-15);
  EXPECT_NEAR(lower_bound(BoundKind::MultLB1, 0.9, 0.8), 0.36, 1e-15);
  EXPECT_NEAR(lower_bound(BoundKind::Mult, 0.9, 0.8), 0.45846606338755959, 1e-15);
  EXPECT_NEAR(lower_bound(BoundKind::MultLB2, 0.9, 0.8), 0.34, 1e-15);
  EXPECT_NEAR(lower_bound(BoundKind::EuclLB, 0.8, 0.6), -0.4, 1e-15);
  EXPECT_EQ(lower_bound(BoundKind::Euclidean, -1.0, -1.0), -7.0);
}

TEST(LowerBound, MatchesAngleSumOracleAtTableValues) {
  EXPECT_NEAR(lower_bound(BoundKind::Mult, 0.9, 0.8), angle_sum_oracle(0.9, 0.8), 1e-14);
  EXPECT_NEAR(lower_bound(BoundKind::Mult, 0.5, 0.5), angle_sum_oracle(0.5, 0.5), 1e-14);
}

TEST(LowerBound, RejectsOutOfDomain) {
  EXPECT_THROW(lower_bound(BoundKind::Mult, 1.5, 0.0), DomainError);
  EXPECT_THROW(lower_bound(BoundKind::Mult, 0.0, std::nan("")), DomainError);
  EXPECT_THROW(upper_bound(-1.01, 0.0), DomainError);
}

TEST(UpperBound, Values) {
  EXPECT_NEAR(upper_bound(1.0, 0.7), 0.7, 1e-15);
  EXPECT_EQ(upper_bound(0.0, 0.0), 1.0);
  EXPECT_NEAR(upper_bound(0.9, 0.8), 0.98153393661244041, 1e-15);
}

TEST(SimInterval, Validates) {
  EXPECT_THROW(SimInterval(0.5, 0.4), DomainError);
  const SimInterval iv(0.2, 0.5);
  EXPECT_TRUE(iv.contains(Similarity(0.2)));
  EXPECT_TRUE(iv.contains(Similarity(0.5)));
  EXPECT_FALSE(iv.contains(Similarity(0.51)));
}

TEST(BestCase, Examples) {
  EXPECT_EQ(best_case_similarity(Similarity(0.9), {0.85, 0.95}).value(), 1.0);
  EXPECT_NEAR(best_case_similarity(Similarity(1.0), {0.2, 0.5}).value(), 0.5, 1e-15);
  EXPECT_NEAR(best_case_similarity(Similarity(0.9), {0.0, 0.5}).value(), 0.82749172176353748, 1e-15);
  EXPECT_NEAR(best_case_similarity(Similarity(0.9), {0.0, 0.5}).value(), sampled_best(0.9, 0.0, 0.5), 1e-9);
}

TEST(WorstCase, Examples) {
  EXPECT_NEAR(worst_case_similarity(Similarity(1.0), {0.2, 0.5}).value(), 0.2, 1e-15);
  EXPECT_EQ(worst_case_similarity(Similarity(0.9), {-0.95, -0.85}).value(), -1.0);
  EXPECT_NEAR(worst_case_similarity(Similarity(0.9), {0.0, 0.5}).value(), -0.43588989435406736, 1e-15);
  EXPECT_NEAR(worst_case_similarity(Similarity(0.9), {0.0, 0.5}).value(), sampled_worst(0.9, 0.0, 0.5), 1e-9);
}

TEST(BestWorstProperty, AgreeWithSampledAngles) {
  Gen gen(21);
  for (int i = 0; i < 200; ++i) {
    const double s = gen.sim();
    double lo = gen.sim();
    double hi = gen.sim();
    if (lo > hi) std::swap(lo, hi);
    const SimInterval iv(lo, hi);
    EXPECT_NEAR(best_case_similarity(Similarity(s), iv).value(), sampled_best(s, lo, hi, 20000), 1e-6);
    EXPECT_NEAR(worst_case_similarity(Similarity(s), iv).value(), sampled_worst(s, lo, hi, 20000), 1e-6);
  }
}

TEST(BoundsProperty, SoundOnRandomTriples) {
  Gen gen(22);
  for (std::size_t dim : {3u, 10u, 100u}) {
    for (int i = 0; i < 25000; ++i) {
      const auto x = gen.unit(dim);
      const auto y = gen.unit(dim);
      const auto z = gen.unit(dim);
      const double xy = cosine_similarity(x, y).value();
      const Similarity xz = cosine_similarity(x, z);
      const Similarity zy = cosine_similarity(z, y);
      for (auto kind : kAllBoundKinds) {
        ASSERT_LE(lower_bound(kind, xz, zy), xy + 1e-12) << to_string(kind) << " dim " << dim;
      }
      ASSERT_GE(upper_bound(xz, zy), xy - 1e-12) << "dim " << dim;
    }
  }
}

// In the plane the upper bound is attained, so rounding of the input
// similarities shows through; near +-1 it is amplified by the square roots.
TEST(BoundsProperty, SoundInThePlaneUpToInputRounding) {
  Gen gen(29);
  using cosim::testing::input_sensitivity;
  const double h = cosim::testing::kSimilarityInputError;
  for (int i = 0; i < 100000; ++i) {
    const auto x = gen.unit(2);
    const auto y = gen.unit(2);
    const auto z = gen.unit(2);
    const double xy = cosine_similarity(x, y).value();
    const double a = cosine_similarity(x, z).value();
    const double b = cosine_similarity(z, y).value();
    for (auto kind : kAllBoundKinds) {
      const auto f = [kind](double s, double t) { return formula::lower(kind, s, t); };
      ASSERT_LE(f(a, b), xy + 1e-12 + input_sensitivity(f, a, b, h)) << to_string(kind);
    }
    const auto up = [](double s, double t) { return formula::upper(s, t); };
    ASSERT_GE(up(a, b), xy - 1e-12 - input_sensitivity(up, a, b, h)) << a << " " << b;
  }
}

TEST(BoundsProperty, MultIsTightOnPlanarWitness) {
  Gen gen(23);
  for (int i = 0; i < 10000; ++i) {
    const double s1 = gen.sim();
    const double s2 = gen.sim();
    const double t1 = std::acos(s1);
    const double t2 = std::acos(s2);
    const DenseVector x{1.0, 0.0};
    const DenseVector y{std::cos(t1 + t2), std::sin(t1 + t2)};
    EXPECT_NEAR(cosine_similarity(x, y).value(), lower_bound(BoundKind::Mult, s1, s2), 1e-9);
  }
}

TEST(BoundsProperty, SymmetricExactly) {
  Gen gen(24);
  for (int i = 0; i < 100000; ++i) {
    const double a = gen.sim();
    const double b = gen.sim();
    for (auto kind : kAllBoundKinds) ASSERT_EQ(formula::lower(kind, a, b), formula::lower(kind, b, a));
    ASSERT_EQ(formula::upper(a, b), formula::upper(b, a));
  }
}

TEST(BoundsProperty, DiagonalCollapse) {
  Gen gen(25);
  for (int i = 0; i < 100000; ++i) {
    const double s = gen.sim();
    const double mult = formula::mult(s, s);
    EXPECT_NEAR(mult, 2 * s * s - 1, 1e-15);
    EXPECT_NEAR(formula::mult_lb1(s, s), mult, 1e-15);
    EXPECT_NEAR(formula::mult_lb2(s, s), mult, 1e-15);
    EXPECT_NEAR(formula::euclidean(s, s), 4 * s - 3, 1e-15);
    EXPECT_NEAR(formula::eucl_lb(s, s), formula::euclidean(s, s), 1e-15);
  }
}

TEST(BoundsProperty, MultVariantAndArccosAgreeWithMult) {
  Gen gen(26);
  for (int i = 0; i < 100000; ++i) {
    const double a = gen.sim();
    const double b = gen.sim();
    EXPECT_NEAR(formula::mult_variant(a, b), formula::mult(a, b), 1e-13);
    EXPECT_NEAR(formula::arccos(a, b), formula::mult(a, b), 1e-13);
  }
}

TEST(BoundsProperty, Ranges) {
  Gen gen(27);
  for (int i = 0; i < 100000; ++i) {
    const double a = gen.sim();
    const double b = gen.sim();
    for (double v : {formula::mult(a, b), formula::arccos(a, b), formula::upper(a, b)}) {
      EXPECT_GE(v, -1.0 - 1e-15);
      EXPECT_LE(v, 1.0 + 1e-15);
    }
    EXPECT_GE(formula::euclidean(a, b), -7.0);
  }
}

TEST(BoundsProperty, IntervalConsistency) {
  Gen gen(28);
  for (int i = 0; i < 100000; ++i) {
    const Similarity q(gen.sim());
    double lo = gen.sim();
    double hi = gen.sim();
    if (lo > hi) std::swap(lo, hi);
    const SimInterval iv(lo, hi);
    const Similarity s(gen.uniform(lo, hi));
    ASSERT_LE(worst_case_similarity(q, iv).value(), lower_bound(BoundKind::Mult, q, s) + 1e-12);
    ASSERT_GE(best_case_similarity(q, iv).value(), upper_bound(q, s) - 1e-12);
  }
}
