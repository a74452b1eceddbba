#pragma once

#include <stdexcept>
#include <string>

namespace qpsf {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad grid sizes, incompatible grids, invalid parameters.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// A state or operator does not fit on the grid or in the Fock truncation.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Kernel or ordering function violating its structural constraint.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Parameter outside the mathematical domain (e.g. s >= 1, wrong field tag).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpsf
