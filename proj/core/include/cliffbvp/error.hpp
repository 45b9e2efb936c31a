#pragma once

#include <stdexcept>
#include <string>

namespace cliffbvp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to algebras of different dimension.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// Division by zero, inversion of a zero paravector, coincident kernel points.
class SingularInput : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-contract arguments.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A cap exclusion that leaves no nodes behind.
class DegenerateExclusion : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested outside the region where an expansion is valid.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The span indicator could not be rounded to one of {0, 1/2, 1}.
class InconclusiveClassification : public Error {
 public:
  using Error::Error;
};

}  // namespace cliffbvp
