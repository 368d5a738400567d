// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cubicpt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments, values outside the documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Integrator or quadrature breakdown (step underflow, non-finite values, budget exhausted).
class NumericError : public Error {
 public:
  using Error::Error;
};

// Turning point collisions, cut proximity, Stokes topology failures.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Newton divergence, index mismatch, inconsistent matching.
class SolverError : public Error {
 public:
  using Error::Error;
};

// Result is dominated by floating point noise.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

}  // namespace cubicpt
