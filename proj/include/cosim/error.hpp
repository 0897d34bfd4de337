#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cosim {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroVectorError : public Error {
 public:
  ZeroVectorError() : Error("vector has zero L2 norm") {}
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  DimensionMismatchError(std::size_t a, std::size_t b)
      : Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

/// Dense vs sparse operands mixed in one similarity computation.
class RepresentationMismatchError : public Error {
 public:
  RepresentationMismatchError() : Error("cannot mix dense and sparse vectors") {}
};

class InvalidVectorError : public Error {
 public:
  using Error::Error;
};

/// A similarity argument outside [-1, 1] (or NaN).
class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyDatasetError : public Error {
 public:
  EmptyDatasetError() : Error("dataset is empty") {}
};

class BadKError : public Error {
 public:
  BadKError(std::size_t k, std::size_t n)
      : Error("k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]") {}
};

class BadPivotCountError : public Error {
 public:
  BadPivotCountError(std::size_t m, std::size_t n)
      : Error("pivot count " + std::to_string(m) + " outside [1, " + std::to_string(n) + "]") {}
};

/// Malformed input file. The message carries "file:line: reason".
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& reason)
      : Error(file + ":" + std::to_string(line) + ": " + reason), file_(file), line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// Persisted index is unreadable, of an unknown version, or fails its checksum.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace cosim
