#pragma once

#include <stdexcept>
#include <string>

namespace trajdist {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a precondition (too few points, empty set, bad parameter).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace trajdist
