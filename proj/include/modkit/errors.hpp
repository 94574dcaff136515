#pragma once

#include <stdexcept>
#include <string>

namespace modkit {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero in cyclotomic field") {}
};

struct NotCoprime : Error {
  using Error::Error;
};

struct NotReal : Error {
  using Error::Error;
};

/// An interval enclosure straddles zero at the requested precision.
struct InsufficientPrecision : Error {
  using Error::Error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

/// Required duality data is absent from a raw datum.
struct MissingDuality : Error {
  using Error::Error;
};

/// Character collisions or missing matches: the input is not of the claimed type.
struct DegeneracyError : Error {
  using Error::Error;
};

/// Input violates a structural hypothesis (symmetric center shape, dim(eps), fixed points).
struct HypothesisError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace modkit
