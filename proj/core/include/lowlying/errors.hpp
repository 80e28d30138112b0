#pragma once

#include <stdexcept>
#include <string>

namespace lowlying {

// Base of all library errors. Precondition violations on plain arguments use
// std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure did not reach its tolerance (AFE tail, bisection,
// rejection sampler, eigenvalue modulus check, ...).
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Required input data (coefficient file, cache entry) is absent or malformed.
class MissingDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace lowlying
