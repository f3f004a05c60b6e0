// Copyright 2026 The pensim Authors
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

namespace pensim {

// Error taxonomy used across the library. The CLI maps these onto process
// exit codes: ConfigError -> 2, ResourceError / NumericError -> 3.

/// Invalid argument, inconsistent object, or violated precondition.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands with mismatched qubit counts or matrix dimensions.
class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Request exceeds a hard size cap (dense matrices are capped by qubit count).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: level crossing, vanishing gap, stiffness, positivity
/// loss beyond tolerance, or a degenerate fit.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration file or command-line usage.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pensim
