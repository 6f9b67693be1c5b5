#pragma once

#include <stdexcept>
#include <string>

namespace latdeck {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed domain data: unknown candidate index, invalid style, bad file.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A mapping that is not a bijection, or an identity where a swap is required.
class InvalidSwapError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Input exceeds a configured capacity limit (deck length, brute-force size).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A solve hit its time limit before reaching a definitive answer.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

// Internal consistency check failed; indicates a bug, not a caller error.
class InternalError : public Error {
 public:
  using Error::Error;
};

// A closed-form construction was asked for inputs outside its hypothesis.
class ConstructionInapplicableError : public Error {
 public:
  using Error::Error;
};

}  // namespace latdeck
