#pragma once

#include <stdexcept>
#include <string>

namespace bellsets {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Interval endpoints out of order (lo > hi).
class OrderingError : public Error {
  public:
    explicit OrderingError(const std::string& what) : Error(what) {}
};

/// A NaN or infinity reached a place that requires finite values.
class NonFiniteError : public Error {
  public:
    explicit NonFiniteError(const std::string& what) : Error(what) {}
};

/// A domain-type invariant failed (bound chains, normalization, hermiticity, ...).
class InvariantViolation : public Error {
  public:
    explicit InvariantViolation(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
  public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

/// Desk-scale cap exceeded (event count, operator dimension, subset blowup).
class CapExceeded : public Error {
  public:
    explicit CapExceeded(const std::string& what) : Error(what) {}
};

/// Decomposition of Z = 0: the resulting chi descriptor would be empty.
class EmptyChiError : public Error {
  public:
    explicit EmptyChiError(const std::string& what) : Error(what) {}
};

}  // namespace bellsets
