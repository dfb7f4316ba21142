#pragma once

#include <stdexcept>
#include <string>

namespace ajpeg {

/// Precondition violated by the caller (bad dimensions, bad parameters).
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or truncated compressed stream.
class CorruptStream : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ajpeg
