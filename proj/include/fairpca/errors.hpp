#pragma once

#include <stdexcept>
#include <string>

namespace fairpca {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments violate a documented precondition (non-finite values, bad ranges, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Shape mismatch or an out-of-range subspace dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A numerical routine failed to produce a usable result (e.g. a Cholesky
// factorization of an indefinite matrix).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A protected attribute has fewer than two distinct values where the
// operation needs a real group split.
class DegenerateAttribute : public Error {
 public:
  using Error::Error;
};

// Data is unusable for the requested statistic (single-class labels, empty
// sample, zero total variance, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// A file's structure does not match what was asked for (missing columns,
// wrong header, unknown model format).
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A cell or token inside an otherwise well-formed file cannot be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A generator or run specification is internally inconsistent.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace fairpca
