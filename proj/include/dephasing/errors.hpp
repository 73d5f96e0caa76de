#pragma once

#include <stdexcept>
#include <string>

namespace dephasing {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document or literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A coupling or amplitude that is NaN or infinite.
class NonFiniteError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Shapes that do not line up: row counts, widths, matrix sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A size cap was exceeded (K, N, or an enumeration bound).
class LimitError : public Error {
 public:
  using Error::Error;
};

/// A bit position, row number, or basis index outside its valid range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Numerical state that violates a physical contract (non-normalized
/// environment, non-Hermitian density matrix, ...).
class StateError : public Error {
 public:
  using Error::Error;
};

/// An operation applied to an argument it is not defined for (e.g. asking
/// for the G-symmetry of an Identical pair).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace dephasing
