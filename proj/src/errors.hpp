#pragma once

#include <stdexcept>
#include <string>

namespace l1p {

// Root of the library's error hierarchy. The C API maps each subclass
// to one error code, so keep the set small and meaningful.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Saddle problem has no interior solution (no regularization and fewer
// antennas than users).
class DegenerateSaddle : public Error {
 public:
  using Error::Error;
};

// A calibration target cannot be met for the given parameters.
class InfeasibleTarget : public Error {
 public:
  using Error::Error;
};

// The decode scale is undefined (denominator vanishes or has the wrong
// sign).
class ScalingUndefined : public Error {
 public:
  using Error::Error;
};

// An iterative routine hit its budget without reaching tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace l1p
