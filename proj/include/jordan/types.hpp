#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace jordan {

using Complex = std::complex<double>;

/// Points of C^n in the flattened Harish-Chandra chart of a triple system.
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// A complex-linear map acting on flattened chart coordinates.
using LinearOperator = Eigen::MatrixXcd;

inline constexpr double kDefaultTol = 1e-9;

/// Singular values closer than this (relative to the largest) collapse into one tripotent.
inline constexpr double kMergeGap = 1e-7;

/// Raised when a floating-point computation leaves the regime where its result is trustworthy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when spectral data sits too close to a degenerate configuration to be resolved.
class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Raised when a map is evaluated where its explicit formula has no continuation.
class OutsideExtensionDomain : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

inline Vector basis_vector(int n, int i) {
  Vector e = Vector::Zero(n);
  e(i) = 1.0;
  return e;
}

}  // namespace jordan
