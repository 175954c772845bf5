#pragma once

#include <stdexcept>
#include <string>

namespace concbound {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Incompatible matrix/vector dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Result would exceed the configured maximum dimension.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition or type invariant was violated.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Input is degenerate for the requested operation (e.g. a zero vector).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A numerical self-check failed beyond its tolerance.
class NumericalIntegrity : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling produced too few accepted states.
class YieldError : public Error {
 public:
  using Error::Error;
};

}  // namespace concbound
