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
#include <functional>
#include <vector>

#include "pensim/errors.hpp"

namespace pensim {

/// Relative width (in units of the spectral span) below which adjacent
/// eigenvalues are merged into one degenerate cluster.
inline constexpr double kClusterTolRel = 1e-8;

/// Relative width for merging Bohr frequencies (differences of cluster
/// energies). Much finer than the eigenvalue clustering: frequencies are
/// only merged when they agree to solver precision, because binning two
/// genuinely distinct frequencies into one thermal rate shifts the
/// generator's fixed point away from Gibbs by the binning width.
inline constexpr double kBohrTolRel = 1e-12;

struct Cluster {
  double energy = 0.0;  // mean of the member eigenvalues
  int multiplicity = 0;
  Eigen::MatrixXcd projector;
};

/// Eigenstructure of a Hermitian matrix with near-degenerate eigenvalues
/// merged into clusters. Eigenvalues are ascending; `basis` holds the
/// eigenvectors in the same order, and cluster c occupies columns
/// [start[c], start[c+1]).
struct SpectralData {
  double t = 0.0;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd basis;
  std::vector<int> start;
  std::vector<Cluster> clusters;
  std::vector<double> bohr_frequencies;
  double gap = 0.0;  // first excited cluster above the ground cluster

  const Cluster& ground() const { return clusters.front(); }
  const Eigen::MatrixXcd& ground_projector() const {
    return clusters.front().projector;
  }
};

/// Diagonalize a Hermitian matrix and cluster its spectrum. A non-positive
/// delta_deg selects the default relative tolerance.
SpectralData eigendecompose(const Eigen::MatrixXcd& h, double delta_deg = -1.0,
                            double t = 0.0);

/// All distinct cluster-energy differences (including 0 and negatives),
/// merged within delta_omega and sorted ascending.
std::vector<double> bohr_frequencies(const SpectralData& spec,
                                     double delta_omega = -1.0);

/// Reduced resolvent of the ground cluster: zero on the ground space,
/// (H - e_0)^{-1} on its complement. Its operator norm is 1/gap.
Eigen::MatrixXcd reduced_resolvent(const SpectralData& spec);

/// Time derivative of the ground projector for Hermitian h(t):
/// -S hdot P_0 plus its adjoint, with S the reduced resolvent.
Eigen::MatrixXcd ground_projector_derivative(const SpectralData& spec,
                                             const Eigen::MatrixXcd& h_dot);

struct MinimumGap {
  double gap = 0.0;
  double t_star = 0.0;
};

/// Scan gap(t) on a uniform grid over [t0, t1], then refine the coarse
/// minimum by golden-section search down to a bracket of relative width
/// 1e-4. Throws NumericError if the gap collapses below 1e-12 anywhere
/// (level crossing).
MinimumGap minimum_gap(
    const std::function<Eigen::MatrixXcd(double)>& hamiltonian, double t0,
    double t1, int grid_points = 101, double delta_deg = -1.0);

}  // namespace pensim
