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

#include <string>
#include <vector>

#include "pensim/config.hpp"

namespace pensim {

/// Deliberate fault injections for exercising the suite itself. The KMS
/// flip replaces the expected detailed-balance factor e^{-beta w} by
/// e^{+beta w}, so a healthy rate profile fails that check with violation
/// e^{beta w} - e^{-beta w}.
enum class VerifyMutation { none, kms_sign_flip };

struct VerifyCheck {
  std::string name;
  bool passed = false;
  double violation = 0.0;  // maximum observed violation, check-specific units
  double tolerance = 0.0;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
};

/// Runs the invariant battery on the configured system: exhaustive
/// two-qubit Pauli algebra against dense matrices, code error detection up
/// to distance - 1, the KMS rate relation, detailed balance and the Gibbs
/// fixed point of the generator frozen at t_f / 2, and the
/// population-rate identity along a short trajectory. Throws ResourceError
/// before running anything if the configured code exceeds the dense cap.
VerifyReport verify_suite(const RunConfig& config,
                          VerifyMutation mutation = VerifyMutation::none);

}  // namespace pensim
