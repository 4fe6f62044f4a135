// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace exmax {

// Base of every numeric failure raised by the library.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of the function.
class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Argument at a pole (digamma at a non-positive integer).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Series or root finder exhausted its term/evaluation budget.
class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Integrand returned NaN or infinity.
class EvaluationError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace exmax
