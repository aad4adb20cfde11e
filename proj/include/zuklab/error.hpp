#pragma once

#include <stdexcept>
#include <string>

namespace zuklab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a precondition on the inputs of an operation is violated.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Raised when a computation exceeds the sizes this tool is meant to handle.
class DeskScaleExceeded : public Error {
 public:
  explicit DeskScaleExceeded(const std::string& what)
      : Error("desk-scale exceeded: " + what) {}
};

}  // namespace zuklab
