#pragma once

#include <stdexcept>
#include <string>

namespace orthoflow {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: parameters outside their admissible regime, malformed
/// configurations, unsupported requests. The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A computation that could not be completed with valid inputs.
/// The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InvalidParameters : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateParameters : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BranchCrossing : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DomainViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepUnderflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularHessian : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MaxIterations : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientSamples : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularFactor : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ComplexRoots : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Series expansion left a non-negligible imaginary residue.
class PrecisionLoss : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Process exit code for an exception thrown by the library.
int exit_code_for(const std::exception& e) noexcept;

}  // namespace orthoflow
