#pragma once

#include <stdexcept>
#include <string>

namespace polychrome {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition (dimension mismatch,
/// duplicate points, degenerate configuration, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Float64 mixed with an exact irrational backend, or points whose
/// coordinates do not share one backend.
class BackendMismatch : public Error {
 public:
  explicit BackendMismatch(const std::string& what) : Error("backend mismatch: " + what) {}
};

/// An exact construction would need a value outside the exact field
/// (e.g. an irrational normalization).
class NotExact : public Error {
 public:
  using Error::Error;
};

/// Malformed input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace polychrome
