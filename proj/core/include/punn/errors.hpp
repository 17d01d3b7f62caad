#pragma once

#include <stdexcept>
#include <string>

namespace punn {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or matrix extents do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Value outside the mathematical domain of an operation (e.g. x <= 0 in x^w).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// NaN or infinity where a finite value is required.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter or empty input.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (CSV, schema, model, dataset files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input that parses but disagrees with its declared schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Data that cannot be processed (e.g. a column with no observed values).
class DataError : public Error {
 public:
  using Error::Error;
};

/// A class is too small to appear in both partitions of a split.
class StratificationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace punn
