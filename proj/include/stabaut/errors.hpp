#pragma once

#include <stdexcept>
#include <string>

namespace stabaut {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A search or table construction would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Ray-count multiplier has a prime factor outside the alphabet's primes.
class MultiplierNotSupported : public Error {
 public:
  using Error::Error;
};

/// A read request needs letters outside the available context.
class ContextExhausted : public Error {
 public:
  using Error::Error;
};

/// The target alphabet is too small for a marker scheme.
class InsufficientAlphabet : public Error {
 public:
  using Error::Error;
};

/// A marker scheme over an SFT failed its realizability check.
class FeasibilityUnverified : public Error {
 public:
  using Error::Error;
};

/// The input permutation does not implement the requested arrangement.
class ArrangementMismatch : public Error {
 public:
  using Error::Error;
};

/// A cycle-production recipe did not yield a 3-cycle.
class RecipeFailed : public Error {
 public:
  using Error::Error;
};

/// A serialized file failed validation; the message names the locus.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace stabaut
