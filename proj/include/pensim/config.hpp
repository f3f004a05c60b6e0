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

#include <cstdint>
#include <string>
#include <vector>

#include "pensim/bath.hpp"
#include "pensim/codes.hpp"
#include "pensim/model.hpp"
#include "pensim/propagate.hpp"

namespace pensim {

/// One experiment, as read from a JSON config file. Unknown keys are
/// rejected (typos should not silently fall back to defaults). The default
/// instance is the standard desk problem on the "422" preset.
struct RunConfig {
  std::string code_preset = "422";
  // Explicit code, used instead of the preset when generators is non-empty.
  // Letter strings in the usual syntax ("XXXX"); distance is declared and
  // checked, not inferred.
  std::vector<std::string> code_generators;
  std::vector<std::string> code_logical_x;
  std::vector<std::string> code_logical_z;
  int code_distance = 0;
  int pad_qubits = 0;
  LogicalProblem problem;
  double eta_p = 4.0;
  double beta = 1.0;
  double omega_c = 8.0;
  double kappa = 1e-3;
  std::string coupling_preset = "x_and_z_all_qubits";
  Eigen::MatrixXd bath_correlation;  // empty means identity
  Schedule schedule;
  IntegratorOptions integrator;
  int grid = 201;
  double late_window = 2.0;
  std::string output_dir = ".";
  bool lamb_shift = false;  // reserved; must stay false
  std::uint64_t seed = 0;
};

/// The fully-populated default experiment: "422" code, transverse-field
/// start, Ising-chain finish, eta_p = 4, Ohmic bath at beta = 1.
RunConfig default_config();

/// Parse a JSON document (text). Starts from default_config(); a supplied
/// "problem" section replaces the default problem with all-zero
/// coefficients before applying its entries. Throws ConfigError naming the
/// offending key on unknown keys, type mismatches, or invalid values.
RunConfig parse_config(const std::string& json_text);

/// parse_config() over the contents of a file.
RunConfig load_config(const std::string& path);

/// Code described by the config (preset or explicit generators), with
/// padding applied.
StabilizerCode build_config_code(const RunConfig& config);

Model build_model(const RunConfig& config);

BathModel build_bath(const RunConfig& config, int n_qubits);

}  // namespace pensim
