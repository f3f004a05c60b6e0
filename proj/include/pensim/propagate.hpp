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

/// Embedded Dormand-Prince 5(4) controls. fixed_dt > 0 switches to fixed
/// steps (no error control) for bit-reproducibility studies.
struct IntegratorOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double fixed_dt = 0.0;
  long max_steps = 1000000;  // attempted steps, accepted plus rejected
  double safety = 0.9;
};

struct IntegratorStats {
  long steps_accepted = 0;
  long steps_rejected = 0;
  long rhs_evaluations = 0;
};

/// Model and bath baked into dense form once, so the right-hand side can be
/// evaluated repeatedly without re-walking Pauli sums.
struct PreparedSystem {
  Model model;
  BathModel bath;
  DenseModel dense;
  std::vector<Eigen::MatrixXcd> couplings;  // correlation-diagonalized
  std::vector<double> weights;
  Eigen::MatrixXcd codespace;
  bool dissipative = false;  // false when kappa = 0 or no couplings
};

PreparedSystem prepare(const Model& model, const BathModel& bath);

/// Default initial state: the normalized ground-cluster projector of H(0),
/// Pi_0 / Tr Pi_0 (the unbiased in-cluster choice when degenerate).
Eigen::MatrixXcd initial_state(const PreparedSystem& sys);

/// One right-hand-side evaluation, drho/dt = -i[H(t), rho] + D_t[rho].
/// The dissipator is evaluated in the instantaneous eigenbasis through the
/// Bohr-frequency block structure; this matches the dense vectorized
/// generator to rounding.
Eigen::MatrixXcd generator_rhs(const PreparedSystem& sys, double t,
                               const Eigen::MatrixXcd& rho);

/// Excitation-rate bookkeeping at one instant. Signs follow the ground
/// population: total = d/dt Tr[Pi_0 rho], so the leaked population p_perp
/// obeys dp_perp/dt = -total.
struct RateDecomposition {
  double total = 0.0;
  double diag = 0.0;     // dissipative population flow into Pi_0
  double offdiag = 0.0;  // Q, the projector-motion (coherence) term
  /// Transition amplitudes m[alpha](a, b) = Tr[rho Pi_a F+ Pi_b F Pi_a],
  /// one matrix per coupling source over cluster indices.
  std::vector<Eigen::MatrixXd> m;
  std::vector<double> cluster_energies;
  std::vector<bool> cluster_in_code;  // cluster lies inside the codespace
  double sum_m_excite = 0.0;  // sum of m[alpha](0, l) over non-code l
  double min_m = 0.0;         // most negative amplitude over all (alpha,a,b)
  double gamma_tilde = 0.0;   // max weighted downhill rate, non-code l
  double gap = 0.0;
  /// Smallest excitation energy eps_l - eps_0 over clusters outside the
  /// codespace (infinity when none exist).
  double min_excitation_energy = 0.0;
};

RateDecomposition rate_decomposition(const PreparedSystem& sys, double t,
                                     const Eigen::MatrixXcd& rho);

/// Observables recorded at one snapshot time.
struct TrajectoryPoint {
  double t = 0.0;
  double p_perp = 0.0;          // Tr[Pi_0^perp rho Pi_0^perp]
  double rate_total = 0.0;      // R = d/dt Tr[Pi_0 rho]
  double rate_diag = 0.0;
  double rate_offdiag = 0.0;
  double coherence_norm = 0.0;  // trace norm of Pi_0 rho Pi_0^perp
  double codespace_leakage = 0.0;
  double trace_error = 0.0;
  double min_eig = 0.0;
  // Bound ingredients, not part of the CSV schema.
  double sum_m_excite = 0.0;
  double min_m = 0.0;
  double gamma_tilde = 0.0;
  double gap = 0.0;
  double min_excitation_energy = 0.0;
  double h_dot_norm = 0.0;  // operator norm of dH/dt
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  std::vector<Eigen::MatrixXcd> states;  // filled when store_states is set
  IntegratorStats stats;
};

struct EvolveOptions {
  IntegratorOptions integrator;
  int snapshots = 201;
  /// Explicit snapshot times (strictly increasing, within [0, t_f]);
  /// overrides `snapshots` when non-empty. Integration covers [0, back()].
  std::vector<double> snapshot_times;
  bool store_states = false;
  /// Require rho0 confined to the ground cluster of H(0) within 1e-10
  /// (trace norm). Disable for diagnostics that start elsewhere.
  bool require_ground_support = true;
  /// Abort when the smallest eigenvalue of rho drops below -positivity_tol
  /// at a snapshot; silent repair would mask generator bugs.
  double positivity_tol = 1e-6;
};

Trajectory evolve(const PreparedSystem& sys, const Eigen::MatrixXcd& rho0,
                  const EvolveOptions& opts = {});

/// evolve() from the default initial state.
Trajectory evolve(const PreparedSystem& sys, const EvolveOptions& opts = {});

/// Worst mismatch between a fourth-order central finite difference of the
/// ground-cluster population and the recorded rate R, over interior points
/// of a uniform snapshot grid. Each residual is normalized by
/// max(1e-4 |R|, 1e-8), so values <= 1 mean the identity d/dt Tr[Pi_0 rho]
/// = R holds within that envelope. Throws ValidationError for non-uniform
/// grids.
double rate_identity_violation(const Trajectory& trajectory);

}  // namespace pensim
