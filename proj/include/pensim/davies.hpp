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
#include <vector>

#include "pensim/bath.hpp"
#include "pensim/model.hpp"
#include "pensim/spectral.hpp"

namespace pensim {

/// Davies dissipator applied to a state:
///   D[rho] = sum_c rate_c (F_c rho F_c^+ - 1/2 {F_c^+ F_c, rho}).
/// With validate set, rho must be Hermitian with unit trace within 1e-8.
Eigen::MatrixXcd dissipator_apply(const LindbladOperatorSet& ops,
                                  const Eigen::MatrixXcd& rho,
                                  bool validate = true);

/// Full generator applied to a state: -i[h, rho] + D[rho].
Eigen::MatrixXcd apply_generator(const Eigen::MatrixXcd& h,
                                 const LindbladOperatorSet& ops,
                                 const Eigen::MatrixXcd& rho);

/// Column-major vectorized generator, L vec(rho) = vec(drho/dt).
Eigen::MatrixXcd liouvillian_superoperator(const Eigen::MatrixXcd& h,
                                           const LindbladOperatorSet& ops);

/// The frozen generator at time t for a model and bath: Hamiltonian,
/// frequency-resolved jump operators, and the dense superoperator.
struct GeneratorSnapshot {
  double t = 0.0;
  Eigen::MatrixXcd hamiltonian;
  SpectralData spectrum;
  LindbladOperatorSet ops;
  Eigen::MatrixXcd superoperator;
};

GeneratorSnapshot generator_matrix(const Model& model, const BathModel& bath,
                                   double t);

/// Cluster-to-cluster transition rates of the induced classical (Pauli)
/// master equation: w(to, from) = sum_alpha weight_alpha *
/// gamma(E_from - E_to) * Tr[P_from F^+ P_to F].
struct TransitionMatrix {
  Eigen::MatrixXd w;
  std::vector<double> energies;
};

TransitionMatrix markov_matrix(const SpectralData& spec,
                               const std::vector<Eigen::MatrixXcd>& couplings,
                               const std::vector<double>& weights,
                               const BathModel& bath);

/// Maximum violation of w(up, lo) = e^{-beta (E_up - E_lo)} w(lo, up) over
/// all unordered cluster pairs, each measured relative to
/// max(w(up, lo), w(lo, up), floor). The floor keeps forbidden transitions
/// (rates that are pure round-off of an exact zero) from registering.
double check_detailed_balance(const TransitionMatrix& tm, double beta,
                              double floor = 1e-14);

/// Thermal state e^{-beta h} / Z.
Eigen::MatrixXcd gibbs_state(const Eigen::MatrixXcd& h, double beta);

/// Null vector of the superoperator reshaped to a unit-trace Hermitian
/// state. Throws NumericError when the candidate has (numerically) zero
/// trace.
Eigen::MatrixXcd stationary_state(const Eigen::MatrixXcd& superoperator);

/// Half the trace norm of a - b.
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace pensim
