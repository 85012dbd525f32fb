#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace billiard {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two quadratic numbers with different radicands, or an exact value mixed
/// with an approximate one.
struct IncompatibleField : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// The halfline passes through a lattice corner (rational slope).
struct DegenerateCrossing : Error {
  using Error::Error;
};

struct RecursionDegenerate : Error {
  using Error::Error;
};

struct InvalidTruncation : Error {
  using Error::Error;
};

struct DegenerateFace : Error {
  using Error::Error;
};

/// A verified bound or identity failed. Firing means an implementation bug.
struct TheoremViolation : Error {
  using Error::Error;
};

struct FormulaMismatch : Error {
  using Error::Error;
};

}  // namespace billiard
