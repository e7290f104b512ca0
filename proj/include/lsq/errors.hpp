#pragma once

#include <stdexcept>
#include <string>

namespace lsq {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A column required to be nonzero has zero Euclidean norm (1-based index).
class ZeroColumn : public Error {
 public:
  explicit ZeroColumn(long index)
      : Error("zero column at index " + std::to_string(index)), index_(index) {}
  long index() const noexcept { return index_; }

 private:
  long index_;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// Oblique step invoked with i_prev == i_next.
class SameIndex : public Error {
 public:
  using Error::Error;
};

/// A stop rule needs problem metadata (x*, b null-space component) that was not supplied.
class MissingMetadata : public Error {
 public:
  using Error::Error;
};

class ZeroRhs : public Error {
 public:
  using Error::Error;
};

class BadInterval : public Error {
 public:
  using Error::Error;
};

/// Right-hand sides cannot be made inconsistent: null(A^T) is (numerically) trivial.
class NullSpaceEmpty : public Error {
 public:
  using Error::Error;
};

class UnknownFixture : public Error {
 public:
  using Error::Error;
};

class ZeroMatrix : public Error {
 public:
  using Error::Error;
};

class DegenerateRank : public Error {
 public:
  using Error::Error;
};

class NotUnitized : public Error {
 public:
  using Error::Error;
};

class ParallelColumns : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries a 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace lsq
