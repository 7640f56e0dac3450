#pragma once

#include <stdexcept>
#include <string>

namespace cloudmcdm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract user input (files, matrices, data cells).
/// The message names the offending file and cell where one is known.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine ran out of its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace cloudmcdm
