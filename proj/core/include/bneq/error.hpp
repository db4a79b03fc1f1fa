#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bneq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `position()` is a 0-based byte offset into the
/// parsed text (or line-relative for the network file format).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Structurally valid input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a mode partitioning the agents got one that does not.
class NonPartitionError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a mode (or an agent set) do not.
class ModeMismatchError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or state-space guard was exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the relation between inputs does not hold
/// (e.g. a mode is not embedded in another, or a pair is not equivalent).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace bneq
