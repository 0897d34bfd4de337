#include "cosim/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>

#include "cosim/error.hpp"

namespace cosim::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view token, const std::string& source, std::size_t line) {
  token = trim(token);
  if (token.empty()) throw ParseError(source, line, "empty component");
  if (token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(source, line, "invalid number '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(source, line, "non-finite value '" + std::string(token) + "'");
  }
  return value;
}

SparseVector::Index parse_index(std::string_view token, const std::string& source, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value > UINT32_MAX) {
    throw ParseError(source, line, "invalid index '" + std::string(token) + "'");
  }
  return static_cast<SparseVector::Index>(value);
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return in;
}

}  // namespace

DenseVector parse_dense_line(std::string_view text, const std::string& source, std::size_t line) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    values.push_back(parse_real(text.substr(pos, comma - pos), source, line));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return DenseVector(std::move(values));
}

SparseVector parse_sparse_line(std::string_view text, const std::string& source, std::size_t line) {
  std::vector<SparseVector::Index> indices;
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    pos = text.find_first_not_of(" \t\r\n", pos);
    if (pos == std::string_view::npos) break;
    auto end = text.find_first_of(" \t\r\n", pos);
    if (end == std::string_view::npos) end = text.size();
    const auto token = text.substr(pos, end - pos);
    pos = end;

    const auto colon = token.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(source, line, "expected index:value, got '" + std::string(token) + "'");
    }
    const auto index = parse_index(token.substr(0, colon), source, line);
    const double value = parse_real(token.substr(colon + 1), source, line);
    if (!indices.empty() && index <= indices.back()) {
      throw ParseError(source, line, "indices not strictly ascending at index " + std::to_string(index));
    }
    if (value == 0.0) continue;
    indices.push_back(index);
    values.push_back(value);
  }
  return SparseVector(std::move(indices), std::move(values));
}

std::vector<DenseVector> read_dense(std::istream& in, const std::string& source) {
  std::vector<DenseVector> out;
  std::string buf;
  for (std::size_t line = 1; std::getline(in, buf); ++line) {
    const auto text = trim(buf);
    if (text.empty()) continue;
    auto v = parse_dense_line(text, source, line);
    if (!out.empty() && v.size() != out.front().size()) {
      throw ParseError(source, line,
                       "expected " + std::to_string(out.front().size()) + " components, got " +
                           std::to_string(v.size()));
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<SparseVector> read_sparse(std::istream& in, const std::string& source) {
  std::vector<SparseVector> out;
  std::string buf;
  for (std::size_t line = 1; std::getline(in, buf); ++line) {
    const auto text = trim(buf);
    if (text.empty()) continue;
    out.push_back(parse_sparse_line(text, source, line));
  }
  return out;
}

std::vector<UnitVector> read_unit_vectors(std::istream& in, Format format, const std::string& source) {
  std::vector<UnitVector> out;
  std::size_t dim = 0;
  std::string buf;
  for (std::size_t line = 1; std::getline(in, buf); ++line) {
    const auto text = trim(buf);
    if (text.empty()) continue;
    try {
      if (format == Format::Dense) {
        auto v = parse_dense_line(text, source, line);
        if (!out.empty() && v.size() != dim) {
          throw ParseError(source, line,
                           "expected " + std::to_string(dim) + " components, got " + std::to_string(v.size()));
        }
        dim = v.size();
        out.push_back(normalize(v));
      } else {
        out.push_back(normalize(parse_sparse_line(text, source, line)));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source, line, e.what());
    }
  }
  return out;
}

std::vector<UnitVector> read_unit_vectors_file(const std::filesystem::path& path, Format format) {
  auto in = open(path);
  return read_unit_vectors(in, format, path.string());
}

std::vector<DenseVector> read_dense_file(const std::filesystem::path& path) {
  auto in = open(path);
  return read_dense(in, path.string());
}

std::vector<SparseVector> read_sparse_file(const std::filesystem::path& path) {
  auto in = open(path);
  return read_sparse(in, path.string());
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_dense(std::ostream& out, const std::vector<DenseVector>& vectors) {
  for (const auto& v : vectors) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out << ',';
      out << format_double(v[i]);
    }
    out << '\n';
  }
}

void write_sparse(std::ostream& out, const std::vector<SparseVector>& vectors) {
  for (const auto& v : vectors) {
    for (std::size_t i = 0; i < v.nnz(); ++i) {
      if (i > 0) out << ' ';
      out << v.indices()[i] << ':' << format_double(v.values()[i]);
    }
    out << '\n';
  }
}

}  // namespace cosim::io
