#pragma once

#include <stdexcept>
#include <string>

namespace tdx {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or ill-typed input: foreign symbols, partial maps, bad names,
/// syntax errors in regex text or JSON documents.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Two values whose frames (alphabets, state sets, categories) must agree
/// do not.
class FrameMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// restricted_star applied to a language containing the empty word.
class NotReduced : public Error {
 public:
  using Error::Error;
};

/// Subset construction exceeded its configured state budget.
class StateCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Tabulators exist only for single-state transducers.
class NoTabulator : public Error {
 public:
  using Error::Error;
};

/// A reflexive pair was required but no common section exists.
class NoCommonSection : public Error {
 public:
  using Error::Error;
};

}  // namespace tdx
