#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rosen {

// Base of every error the library throws. The CLI maps the subclasses onto
// exit codes, so keep the split between "bad input" and "bug" meaningful.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on mathematical input was violated (q < 3, non-adjacent
// vertices passed to phi, pattern missing at a rewrite index, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public DomainError {
 public:
  using DomainError::DomainError;
};

class DivisionByZero : public DomainError {
 public:
  using DomainError::DomainError;
};

class ContextMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

// Operation has no meaning for this q (faces of the theta-group tree,
// automaton for q = 3).
class Unsupported : public DomainError {
 public:
  using DomainError::DomainError;
};

// An iteration cap that the mathematics says can never be hit was hit.
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace rosen
