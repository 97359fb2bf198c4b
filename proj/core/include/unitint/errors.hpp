// Copyright 2026 The unitint Authors
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

namespace unitint {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (shape, range, ordering).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be positive definite had an eigenvalue at or below threshold.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// The physical model is malformed: non-Hermitian, non-traceless, non-antisymmetric input.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// The Riccati coordinate keeps running into its pole faster than the grid can follow.
class StiffnessError : public Error {
 public:
  StiffnessError(const std::string& what, double time, int level = -1)
      : Error(what), time_(time), level_(level) {}
  double time() const noexcept { return time_; }
  /// Hierarchy level (matrix dimension) at which it happened, -1 when not applicable.
  int level() const noexcept { return level_; }

 private:
  double time_;
  int level_;
};

/// The requested operation is not defined for this block partition.
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

}  // namespace unitint
