#pragma once

#include <stdexcept>
#include <string>

namespace gdist {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exact integer quantity left its representable range.
class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

/// A Cayley-ball enumeration would exceed the configured element cap.
class MemoryCapExceeded : public Error {
 public:
  using Error::Error;
};

/// A word length (or search) exceeded the caller's radius cap.
class ExceedsCap : public Error {
 public:
  using Error::Error;
};

class MissingPresentation : public Error {
 public:
  using Error::Error;
};

class BadCosetRep : public Error {
 public:
  using Error::Error;
};

class TooFewPoints : public Error {
 public:
  using Error::Error;
};

class NotNonorientable : public Error {
 public:
  using Error::Error;
};

class InadmissiblePair : public Error {
 public:
  using Error::Error;
};

/// A subgroup oracle could not answer exactly within its cap.
class InexactOracle : public Error {
 public:
  using Error::Error;
};

class UnsupportedSubgroup : public Error {
 public:
  using Error::Error;
};

}  // namespace gdist
