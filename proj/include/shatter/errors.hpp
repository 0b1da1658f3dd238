#pragma once

#include <stdexcept>
#include <string>

namespace shatter {

/// Raised when a caller passes data that violates an operation's precondition
/// (out-of-universe elements, malformed files, invalid build steps, ...).
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computed result contradicts a proven structural property.
/// Seeing one of these means either a bug in this library or a false theorem.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace shatter
