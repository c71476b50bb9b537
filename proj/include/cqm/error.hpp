#pragma once

#include <stdexcept>
#include <string>

namespace cqm {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class InvalidDensityMatrix : public Error {
 public:
  using Error::Error;
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

// Analytic resonant formulas requested away from eps1 = eps2 = 0.
class NotResonant : public Error {
 public:
  using Error::Error;
};

// Bell-oscillation condition has no real tunneling ratio (m >= 2n).
class NoRealSolution : public Error {
 public:
  using Error::Error;
};

// Out-of-domain argument (negative time, degenerate grid, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace cqm
