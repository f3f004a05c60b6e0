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
#include <utility>
#include <vector>

#include "pensim/codes.hpp"
#include "pensim/pauli.hpp"

namespace pensim {

/// Interpolation schedule on s = t / t_f. The ramp is the regularized
/// incomplete beta function I_s(v+1, v+1): a polynomial that rises from 0
/// to 1 with its first v derivatives vanishing at both endpoints. v = 0 is
/// the linear ramp.
struct Schedule {
  int v = 1;
  double t_f = 50.0;
};

/// Maximum supported smoothness order (the closed-form polynomial is
/// evaluated by an alternating binomial sum, which stays well conditioned
/// only for modest v).
inline constexpr int kMaxScheduleOrder = 20;

double ramp(const Schedule& schedule, double s);
double ramp_derivative(const Schedule& schedule, double s);

/// Map absolute time to schedule parameter, validating t in [0, t_f].
/// A frozen schedule (t_f = 0) pins s = 0.
double schedule_parameter(const Schedule& schedule, double t);

/// Coefficients of the encoded system Hamiltonian
///   H_S(t) = sum_i hx_i(t) LX_i + hz_i(t) LZ_i
///          + sum_{i<j} jx_ij(t) LX_i LX_j + jz_ij(t) LZ_i LZ_j,
/// where LX/LZ are the code's logical operators. Every coefficient
/// interpolates from its initial to its final value along the ramp.
/// Coupling tables are k x k, symmetric, with zero diagonal.
struct LogicalProblem {
  Eigen::VectorXd h_x_init, h_x_final;
  Eigen::VectorXd h_z_init, h_z_final;
  Eigen::MatrixXd j_x_init, j_x_final;
  Eigen::MatrixXd j_z_init, j_z_final;

  /// All-zero problem on k logical qubits.
  static LogicalProblem zero(int k);
};

void validate_problem(const LogicalProblem& problem, int k);

/// Full simulation model: code, encoded problem, schedule and penalty
/// strength. The total Hamiltonian is H(t) = eta_p * H_penalty + H_S(t).
struct Model {
  StabilizerCode code;
  LogicalProblem problem;
  Schedule schedule;
  double eta_p = 4.0;
};

/// The encoded system Hamiltonian at time t as a Pauli sum (penalty
/// excluded). Terms whose coefficient vanishes at both endpoints are
/// dropped.
PauliSum system_hamiltonian(const Model& model, double t);

/// Dense H(t) and its analytic time derivative.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> total_hamiltonian(
    const Model& model, double t);

/// Densified model pieces, assembled once so that repeated Hamiltonian
/// evaluations reduce to scaled matrix sums.
struct DenseModel {
  int dim = 0;
  Schedule schedule;
  double eta_p = 0.0;
  Eigen::MatrixXcd penalty;    // -sum_i S_i
  Eigen::MatrixXcd codespace;  // P_C
  std::vector<Eigen::MatrixXcd> terms;
  Eigen::VectorXd c_init, c_final;

  void hamiltonian(double t, Eigen::MatrixXcd& h,
                   Eigen::MatrixXcd* h_dot = nullptr) const;
};

DenseModel assemble_dense(const Model& model,
                          int max_qubits = kMaxDenseQubits);

}  // namespace pensim
