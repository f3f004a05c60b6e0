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

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "pensim/pauli.hpp"

namespace pensim {

/// An [[n, k, d]] stabilizer subspace code. The codespace is the joint +1
/// eigenspace of the generators; logical operators commute with every
/// generator and obey the usual pairwise algebra.
///
/// The declared distance is the strict-detection distance: every Pauli error
/// of weight below d anticommutes with at least one generator, so it is
/// annihilated when compressed to the codespace. Stabilizer elements count
/// as violations under this convention (they compress to the identity).
struct StabilizerCode {
  int n = 0;
  int k = 0;
  int d = 1;
  std::vector<PauliTerm> generators;
  std::vector<PauliTerm> logical_x;
  std::vector<PauliTerm> logical_z;
};

/// One eigenvalue level of the penalty Hamiltonian -sum_i S_i: level m has
/// energy shift -(n-k) + 2m and multiplicity C(n-k, m) * 2^k.
struct PenaltyLevel {
  int m = 0;
  double shift = 0.0;
  long long multiplicity = 0;
};

struct PenaltySpectrum {
  std::vector<PenaltyLevel> levels;
  double gap = 2.0;  // spacing between adjacent levels
};

/// Validate and assemble a code from explicit generators and logicals.
/// Throws ValidationError naming the offending operators when the stabilizer
/// algebra, the logical pairing, or the declared distance fails.
StabilizerCode make_code(int n, int k, int d,
                         std::vector<PauliTerm> generators,
                         std::vector<PauliTerm> logical_x,
                         std::vector<PauliTerm> logical_z);

/// Named presets. "422" is the [[4, 2, 2]] code with generators XXXX, ZZZZ.
StabilizerCode build_code(std::string_view preset);

/// Append extra qubits, each pinned by its own single-site Z generator.
/// Logical operators are unchanged. The padded code declares distance 1:
/// the new generators are themselves weight-1 stabilizer elements, which
/// violate the strict-detection convention (harmlessly, since they act as
/// the identity on the codespace).
StabilizerCode pad_code(const StabilizerCode& code, int extra_qubits);

/// The penalty Hamiltonian -sum_i S_i as a Pauli sum.
PauliSum penalty_hamiltonian(const StabilizerCode& code);

/// Exact spectrum of the penalty Hamiltonian.
PenaltySpectrum penalty_spectrum(const StabilizerCode& code);

/// Spacing between adjacent penalty levels (always 2 for commuting
/// +/-1-valued generators).
double penalty_gap(const StabilizerCode& code);

/// Dense projector onto the codespace, prod_i (I + S_i) / 2.
Eigen::MatrixXcd codespace_projector(const StabilizerCode& code,
                                     int max_qubits = kMaxDenseQubits);

struct DetectionViolation {
  PauliTerm op;
  double norm = 0.0;  // operator norm of the compressed error P_C A P_C
};

/// Enumerate every Pauli of weight 1..max_weight and report those that
/// survive compression to the codespace. The weight-0 identity is excluded
/// as the trivial case (it always compresses to P_C itself).
std::vector<DetectionViolation> verify_detection(
    const StabilizerCode& code, int max_weight,
    int max_qubits = kMaxDenseQubits);

}  // namespace pensim
