#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace medial {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed term, identity, signature or numeric list.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A position that does not address a subterm of the given term.
class InvalidPosition : public Error {
 public:
  using Error::Error;
};

/// The source side of an identity does not match at the requested position.
class NoMatch : public Error {
 public:
  using Error::Error;
};

/// A precondition on the caller's input was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The criterion has no closed-form lattice for the selector; use the oracle.
class UnsupportedSelector : public Error {
 public:
  using Error::Error;
};

}  // namespace medial
