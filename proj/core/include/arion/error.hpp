#pragma once

#include <stdexcept>
#include <string>

namespace arion {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied something outside an operation's domain.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Two field elements from different prime fields were combined.
class ModulusMismatch : public Error {
  public:
    ModulusMismatch() : Error("field elements belong to different moduli") {}
};

class NotInvertible : public Error {
  public:
    using Error::Error;
};

/// A state that valid parameters can never produce was reached. Indicates
/// corrupted parameters rather than bad input.
class InternalInvariant : public Error {
  public:
    using Error::Error;
};

} // namespace arion
