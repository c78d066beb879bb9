#pragma once

#include <stdexcept>
#include <string>

namespace tf {

/// Base class of every error raised by the library. The CLI maps each
/// subclass onto a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (exit code 2).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Mathematically undefined request, e.g. inverting zero (exit code 2).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input that is well formed but outside what the algorithms support,
/// such as an indefinite Gram matrix handed to a search (exit code 2).
class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

/// A search or precision budget ran out (exit code 3).
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A checked mathematical property failed (exit code 1). Carries the
/// counterexample in its message.
class PropertyViolation : public Error {
 public:
  using Error::Error;
};

/// Internal inconsistency, e.g. a non-integral trace on an order basis.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tf
