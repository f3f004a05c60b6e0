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
#include "pensim/spectral.hpp"

namespace pensim {

/// One system-bath coupling operator. Only the Ohmic rate profile is
/// implemented; the field exists so configs stay forward compatible.
struct Coupling {
  PauliTerm op;
  std::string profile = "ohmic";
};

/// Thermal bath in the weak-coupling (Davies) treatment. `correlation` is
/// an optional real symmetric positive semidefinite matrix of cross
/// correlations between coupling channels (identity when empty).
struct BathModel {
  double beta = 1.0;
  double omega_c = 8.0;
  double kappa = 1e-3;
  std::vector<Coupling> couplings;
  Eigen::MatrixXd correlation;
};

void validate_bath(const BathModel& bath, int n_qubits);

/// Named coupling sets. "x_and_z_all_qubits" attaches an independent X and
/// Z coupling to every qubit (2n channels).
std::vector<Coupling> coupling_preset(std::string_view name, int n_qubits);

/// Ohmic spectral rate with exponential cutoff,
///   gamma(w) = 2 pi kappa w e^{-|w|/w_c} / (1 - e^{-beta w}),
/// continued to gamma(0) = 2 pi kappa / beta. Satisfies the detailed-balance
/// relation gamma(-w) = e^{-beta w} gamma(w) identically.
double gamma(const BathModel& bath, double omega);

/// Couplings rotated into the eigenbasis of the correlation matrix, so the
/// rate matrix is diagonal with the returned non-negative weights. Channel
/// alpha then damps at weight[alpha] * gamma(w). Throws ValidationError for
/// an indefinite correlation matrix.
struct DiagonalizedCouplings {
  std::vector<PauliSum> ops;
  std::vector<double> weights;
};

DiagonalizedCouplings diagonalize_rate_matrix(const BathModel& bath);

/// Frequency-resolved jump operators. Channel (alpha, w) holds
/// F_alpha(w) = sum over cluster pairs (a, b) with E_b - E_a = w of
/// P_a F_alpha P_b, together with its rate weight[alpha] * gamma(w).
/// F_alpha(-w) = F_alpha(w)^dagger and sum_w F_alpha(w) = F_alpha.
struct LindbladChannel {
  int source = 0;  // index into the diagonalized coupling list
  double omega = 0.0;
  double rate = 0.0;
  Eigen::MatrixXcd op;
};

struct LindbladOperatorSet {
  std::vector<LindbladChannel> channels;
  std::size_t n_sources = 0;
  Eigen::Index dim = 0;
};

LindbladOperatorSet lindblad_operators(
    const std::vector<Eigen::MatrixXcd>& couplings,
    const std::vector<double>& weights, const SpectralData& spec,
    const BathModel& bath, double delta_omega = -1.0);

// Cluster-pair layout of one coupling in the eigenbasis: every Bohr
// frequency with the blocks that share it. This is the workhorse behind
// both lindblad_operators and the propagator's right-hand side.
struct BohrBlock {
  int a = 0, b = 0;  // row cluster, column cluster
};

struct BohrChannel {
  double omega = 0.0;
  std::vector<BohrBlock> blocks;
};

std::vector<BohrChannel> bohr_channels(const SpectralData& spec,
                                       const Eigen::MatrixXcd& f_eigenbasis,
                                       double delta_omega = -1.0);

}  // namespace pensim
