#pragma once

#include <stdexcept>
#include <string>

namespace holderspec {

// Base of every error raised by the library. The CLI maps ConfigError to
// exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Word enumeration would exceed the configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a map, an interval, or a word alphabet.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Interval widths fell below the binary64 floor before the requested
// accuracy was reached.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Iteration or bracketing budget exhausted.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition (e.g. unnormalized potential).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A search over a finite space found nothing (tau block, separator).
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Too few usable data points for an estimate.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Malformed run configuration; message carries the offending field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace holderspec
