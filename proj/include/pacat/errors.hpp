// Copyright 2026 The pacat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pacat {

// Root of every error raised by the library. Callers that only need to
// distinguish "bad input" from "numerical failure" can catch the two
// intermediate classes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that violates a documented precondition or schema.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Numerical/physical condition that the computation cannot satisfy.
class ComputationError : public Error {
 public:
  using Error::Error;
};

// Population in the top 10% of the truncated basis exceeds the guard.
class TruncationError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

// Quadrature variances below the uncertainty bound.
class PhysicalityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateCatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A matrix handed to DensityMatrix fails Hermiticity, trace or positivity.
class InvariantError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class VacuumSubtractionError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class VacuumError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class GridError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pacat
