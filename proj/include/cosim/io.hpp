#pragma once

// Vector file formats.
//
// Dense: CSV, one vector per line, decimal components.
// Sparse: one vector per line, whitespace-separated "index:value" tokens with
// strictly ascending indices (libsvm layout without the label column).
// Blank lines are skipped; NaN/Inf and unsorted indices are rejected with a
// ParseError naming the file and 1-based line.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cosim/simcore.hpp"

namespace cosim::io {

enum class Format { Dense, Sparse };

std::vector<DenseVector> read_dense(std::istream& in, const std::string& source = "<stream>");
std::vector<SparseVector> read_sparse(std::istream& in, const std::string& source = "<stream>");
std::vector<DenseVector> read_dense_file(const std::filesystem::path& path);
std::vector<SparseVector> read_sparse_file(const std::filesystem::path& path);

/// Parses and L2-normalizes every vector. Zero vectors are reported as a
/// ParseError at their line.
std::vector<UnitVector> read_unit_vectors(std::istream& in, Format format, const std::string& source = "<stream>");
std::vector<UnitVector> read_unit_vectors_file(const std::filesystem::path& path, Format format);

/// Single-line parsers; errors are reported against `source`:`line`.
DenseVector parse_dense_line(std::string_view text, const std::string& source = "<inline>", std::size_t line = 1);
SparseVector parse_sparse_line(std::string_view text, const std::string& source = "<inline>", std::size_t line = 1);

void write_dense(std::ostream& out, const std::vector<DenseVector>& vectors);
void write_sparse(std::ostream& out, const std::vector<SparseVector>& vectors);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace cosim::io
