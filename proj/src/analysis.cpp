#include "cosim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>

#include "cosim/io.hpp"

namespace cosim::analysis {

void GridSpec::validate() const {
  if (!(lo >= -1.0 && lo < hi && hi <= 1.0)) throw std::invalid_argument("grid requires -1 <= lo < hi <= 1");
  if (steps < 2) throw std::invalid_argument("grid requires at least 2 steps");
}

namespace {

template <typename Fn>
Matrix evaluate(const GridSpec& spec, Fn&& fn) {
  spec.validate();
  Matrix m(spec.steps, spec.steps);
  for (std::size_t i = 0; i < spec.steps; ++i) {
    const double s1 = spec.at(i);
    for (std::size_t j = 0; j < spec.steps; ++j) m(i, j) = fn(s1, spec.at(j));
  }
  return m;
}

GridCell pick_max(const Matrix& m, const GridSpec& spec, bool absolute) {
  GridCell best{-INFINITY, spec.at(0), spec.at(0)};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = absolute ? std::abs(m(i, j)) : m(i, j);
      if (v > best.value) best = {v, spec.at(i), spec.at(j)};
    }
  }
  return best;
}

}  // namespace

Matrix surface(BoundKind kind, const GridSpec& spec) {
  return evaluate(spec, [kind](double a, double b) { return formula::lower(kind, a, b); });
}

Matrix difference_surface(BoundKind a, BoundKind b, const GridSpec& spec, DifferenceMode mode) {
  return evaluate(spec, [=](double s1, double s2) {
    double va = formula::lower(a, s1, s2);
    double vb = formula::lower(b, s1, s2);
    if (mode == DifferenceMode::Clamped) {
      va = std::max(va, -1.0);
      vb = std::max(vb, -1.0);
    }
    return va - vb;
  });
}

GridCell max_cell(const Matrix& m, const GridSpec& spec) { return pick_max(m, spec, false); }
GridCell max_abs_cell(const Matrix& m, const GridSpec& spec) { return pick_max(m, spec, true); }

void write_surface_csv(std::ostream& out, const Matrix& m, const GridSpec& spec) {
  out << "s1,s2,value\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const std::string s1 = io::format_double(spec.at(i));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out << s1 << ',' << io::format_double(spec.at(j)) << ',' << io::format_double(m(i, j)) << '\n';
    }
  }
}

std::vector<SurfaceRow> read_surface_csv(std::istream& in) {
  std::vector<SurfaceRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 && line.starts_with("s1")) continue;
    if (line.empty()) continue;
    const auto v = io::parse_dense_line(line, "<surface>", number);
    if (v.size() != 3) throw std::invalid_argument("surface row " + std::to_string(number) + " needs 3 columns");
    rows.push_back({v[0], v[1], v[2]});
  }
  return rows;
}

int ordering_violations(double s1, double s2, double ulps) {
  const double eucl_lb = formula::eucl_lb(s1, s2);
  const double eucl = formula::euclidean(s1, s2);
  const double mult = formula::mult(s1, s2);
  const double lb1 = formula::mult_lb1(s1, s2);
  const double lb2 = formula::mult_lb2(s1, s2);
  auto violated = [ulps](double lesser, double greater) {
    const double scale = std::max({1.0, std::abs(lesser), std::abs(greater)});
    return lesser - greater > ulps * std::numeric_limits<double>::epsilon() * scale ? 1 : 0;
  };
  return violated(eucl_lb, eucl) + violated(eucl, mult) + violated(eucl_lb, lb2) + violated(lb2, lb1) +
         violated(lb1, mult);
}

std::size_t count_ordering_violations(const GridSpec& spec, double ulps) {
  spec.validate();
  std::size_t total = 0;
  for (std::size_t i = 0; i < spec.steps; ++i) {
    for (std::size_t j = 0; j < spec.steps; ++j) total += ordering_violations(spec.at(i), spec.at(j), ulps);
  }
  return total;
}

std::size_t count_ordering_violations_random(std::size_t pairs, std::uint64_t seed, double ulps) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::size_t total = 0;
  for (std::size_t n = 0; n < pairs; ++n) {
    const double a = uniform(rng);
    const double b = uniform(rng);
    total += ordering_violations(a, b, ulps);
  }
  return total;
}

GridReport average_report(const GridSpec& spec) {
  spec.validate();
  GridReport r;
  r.spec = spec;
  double eucl_sum = 0.0;
  double acos_sum = 0.0;
  double strict_eucl_sum = 0.0;
  double strict_acos_sum = 0.0;
  r.max_arccos_minus_euclid = -INFINITY;

  // Row-major accumulation order keeps the sums reproducible.
  for (std::size_t i = 0; i < spec.steps; ++i) {
    const double s1 = spec.at(i);
    for (std::size_t j = 0; j < spec.steps; ++j) {
      const double s2 = spec.at(j);
      const double eucl = formula::euclidean(s1, s2);
      const double acos = formula::arccos(s1, s2);
      const double mult = formula::mult(s1, s2);

      if (s1 >= 0.0 && s2 >= 0.0) {
        if (acos >= 0.0) {
          eucl_sum += eucl;
          acos_sum += acos;
          ++r.cells;
        }
        r.max_arccos_minus_euclid = std::max(r.max_arccos_minus_euclid, std::max(acos, -1.0) - std::max(eucl, -1.0));
      }
      if (eucl >= 0.0 && acos >= 0.0) {
        strict_eucl_sum += eucl;
        strict_acos_sum += acos;
        ++r.both_nonneg_cells;
      }
      r.max_mult_arccos_diff = std::max(r.max_mult_arccos_diff, std::abs(mult - acos));
      r.ordering_violations += static_cast<std::size_t>(ordering_violations(s1, s2));
    }
  }
  if (r.cells > 0) {
    r.euclid_mean = eucl_sum / static_cast<double>(r.cells);
    r.arccos_mean = acos_sum / static_cast<double>(r.cells);
    r.ratio = r.arccos_mean / r.euclid_mean - 1.0;
  }
  if (r.both_nonneg_cells > 0) {
    r.both_nonneg_euclid_mean = strict_eucl_sum / static_cast<double>(r.both_nonneg_cells);
    r.both_nonneg_arccos_mean = strict_acos_sum / static_cast<double>(r.both_nonneg_cells);
  }
  return r;
}

namespace {

void track(GridCell& cell, double value, double s1, double s2) {
  if (value > cell.value) cell = {value, s1, s2};
}

}  // namespace

StabilityReport stability_report(const GridSpec& spec) {
  spec.validate();
  StabilityReport r;
  for (std::size_t i = 0; i < spec.steps; ++i) {
    const double s1 = spec.at(i);
    for (std::size_t j = 0; j < spec.steps; ++j) {
      const double s2 = spec.at(j);
      const double mult = formula::mult(s1, s2);
      track(r.max_mult_vs_arccos, std::abs(mult - formula::arccos(s1, s2)), s1, s2);
      track(r.max_variant_vs_mult, std::abs(formula::mult_variant(s1, s2) - mult), s1, s2);
    }
  }
  return r;
}

StabilityReport stability_report_diagonal(const GridSpec& spec) {
  spec.validate();
  StabilityReport r;
  for (std::size_t i = 0; i < spec.steps; ++i) {
    const double s = spec.at(i);
    const double mult = formula::mult(s, s);
    track(r.max_mult_vs_arccos, std::abs(mult - formula::arccos(s, s)), s, s);
    track(r.max_variant_vs_mult, std::abs(formula::mult_variant(s, s) - mult), s, s);
  }
  return r;
}

void write_report_csv(std::ostream& out, const GridReport& r) {
  using io::format_double;
  out << "key,value\n"
      << "grid_lo," << format_double(r.spec.lo) << '\n'
      << "grid_hi," << format_double(r.spec.hi) << '\n'
      << "grid_steps," << r.spec.steps << '\n'
      << "euclid_mean," << format_double(r.euclid_mean) << '\n'
      << "arccos_mean," << format_double(r.arccos_mean) << '\n'
      << "ratio," << format_double(r.ratio) << '\n'
      << "cells," << r.cells << '\n'
      << "both_nonneg_euclid_mean," << format_double(r.both_nonneg_euclid_mean) << '\n'
      << "both_nonneg_arccos_mean," << format_double(r.both_nonneg_arccos_mean) << '\n'
      << "both_nonneg_cells," << r.both_nonneg_cells << '\n'
      << "max_arccos_minus_euclid," << format_double(r.max_arccos_minus_euclid) << '\n'
      << "max_mult_arccos_diff," << format_double(r.max_mult_arccos_diff) << '\n'
      << "ordering_violations," << r.ordering_violations << '\n';
}

void write_report_csv(std::ostream& out, const StabilityReport& r) {
  using io::format_double;
  out << "key,value\n"
      << "max_mult_arccos_diff," << format_double(r.max_mult_vs_arccos.value) << '\n'
      << "max_mult_arccos_s1," << format_double(r.max_mult_vs_arccos.s1) << '\n'
      << "max_mult_arccos_s2," << format_double(r.max_mult_vs_arccos.s2) << '\n'
      << "max_variant_mult_diff," << format_double(r.max_variant_vs_mult.value) << '\n'
      << "max_variant_mult_s1," << format_double(r.max_variant_vs_mult.s1) << '\n'
      << "max_variant_mult_s2," << format_double(r.max_variant_vs_mult.s2) << '\n';
}

}  // namespace cosim::analysis
