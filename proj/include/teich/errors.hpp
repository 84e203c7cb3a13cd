#pragma once

#include <stdexcept>
#include <string>

namespace teich {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The combinatorial data does not describe a valid triangulated surface.
class InvalidTriangulation : public Error {
 public:
  using Error::Error;
};

/// A numeric argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The triangulation does not satisfy the hypothesis an operation needs
/// (e.g. the inverse chart requires 1-valent punctures).
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A lamination or curve violates its admission rules.
class LaminationError : public Error {
 public:
  using Error::Error;
};

}  // namespace teich
