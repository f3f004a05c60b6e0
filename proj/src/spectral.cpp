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

#include "pensim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pensim {

namespace {

constexpr double kCrossingTol = 1e-12;

double cluster_width(const Eigen::VectorXd& eigenvalues, double delta_deg) {
  if (delta_deg > 0.0) return delta_deg;
  const double span =
      eigenvalues(eigenvalues.size() - 1) - eigenvalues(0);
  return std::max(kClusterTolRel * span, 1e-14);
}

}  // namespace

SpectralData eigendecompose(const Eigen::MatrixXcd& h, double delta_deg,
                            double t) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw DimensionError("eigendecompose expects a square matrix");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw ValidationError("eigendecompose expects a Hermitian matrix");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigendecomposition failed to converge");
  }

  SpectralData spec;
  spec.t = t;
  spec.eigenvalues = solver.eigenvalues();
  spec.basis = solver.eigenvectors();

  const double width = cluster_width(spec.eigenvalues, delta_deg);
  const Eigen::Index dim = spec.eigenvalues.size();
  spec.start.push_back(0);
  for (Eigen::Index i = 1; i < dim; ++i) {
    if (spec.eigenvalues(i) - spec.eigenvalues(i - 1) > width) {
      spec.start.push_back(static_cast<int>(i));
    }
  }
  spec.start.push_back(static_cast<int>(dim));

  for (std::size_t c = 0; c + 1 < spec.start.size(); ++c) {
    const int lo = spec.start[c];
    const int hi = spec.start[c + 1];
    Cluster cluster;
    cluster.multiplicity = hi - lo;
    cluster.energy =
        spec.eigenvalues.segment(lo, hi - lo).mean();
    const auto cols = spec.basis.middleCols(lo, hi - lo);
    cluster.projector = cols * cols.adjoint();
    spec.clusters.push_back(std::move(cluster));
  }

  spec.gap = spec.clusters.size() > 1
                 ? spec.clusters[1].energy - spec.clusters[0].energy
                 : std::numeric_limits<double>::infinity();
  spec.bohr_frequencies = bohr_frequencies(spec, delta_deg);
  return spec;
}

std::vector<double> bohr_frequencies(const SpectralData& spec,
                                     double delta_omega) {
  const double span = spec.eigenvalues(spec.eigenvalues.size() - 1) -
                      spec.eigenvalues(0);
  const double width = delta_omega > 0.0
                           ? delta_omega
                           : std::max(kBohrTolRel * span, 1e-13);
  std::vector<double> diffs;
  const std::size_t n = spec.clusters.size();
  diffs.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      diffs.push_back(spec.clusters[b].energy - spec.clusters[a].energy);
    }
  }
  std::sort(diffs.begin(), diffs.end());
  std::vector<double> out;
  std::size_t i = 0;
  while (i < diffs.size()) {
    std::size_t j = i + 1;
    double sum = diffs[i];
    while (j < diffs.size() && diffs[j] - diffs[j - 1] <= width) {
      sum += diffs[j];
      ++j;
    }
    out.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  return out;
}

Eigen::MatrixXcd reduced_resolvent(const SpectralData& spec) {
  const Eigen::Index dim = spec.eigenvalues.size();
  if (spec.clusters.size() < 2) return Eigen::MatrixXcd::Zero(dim, dim);
  if (spec.gap < kCrossingTol) {
    throw NumericError("reduced resolvent undefined: gap " +
                       std::to_string(spec.gap) + " is degenerate");
  }
  const double e0 = spec.clusters[0].energy;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(dim);
  for (int i = spec.start[1]; i < static_cast<int>(dim); ++i) {
    inv(i) = 1.0 / (spec.eigenvalues(i) - e0);
  }
  return spec.basis * inv.asDiagonal() * spec.basis.adjoint();
}

Eigen::MatrixXcd ground_projector_derivative(const SpectralData& spec,
                                             const Eigen::MatrixXcd& h_dot) {
  const Eigen::MatrixXcd s = reduced_resolvent(spec);
  const Eigen::MatrixXcd block = -s * h_dot * spec.ground_projector();
  return block + block.adjoint();
}

MinimumGap minimum_gap(
    const std::function<Eigen::MatrixXcd(double)>& hamiltonian, double t0,
    double t1, int grid_points, double delta_deg) {
  if (!(t1 >= t0)) throw ValidationError("minimum_gap needs t1 >= t0");
  if (grid_points < 2) throw ValidationError("minimum_gap needs >= 2 points");

  auto gap_at = [&](double t) {
    const SpectralData spec = eigendecompose(hamiltonian(t), delta_deg, t);
    // A multi-level spectrum collapsing into a single cluster is a crossing
    // too: the gap passes through zero exactly where the cluster count
    // drops, so it must not read as "no excited level".
    if (spec.eigenvalues.size() > 1 && spec.clusters.size() < 2) {
      throw NumericError("level crossing: all eigenvalues merge at t = " +
                         std::to_string(t));
    }
    if (spec.gap < kCrossingTol) {
      throw NumericError("level crossing: gap " + std::to_string(spec.gap) +
                         " at t = " + std::to_string(t));
    }
    return spec.gap;
  };

  if (t1 == t0) return {gap_at(t0), t0};

  const double dt = (t1 - t0) / (grid_points - 1);
  double best_gap = std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i < grid_points; ++i) {
    const double g = gap_at(t0 + i * dt);
    if (g < best_gap) {
      best_gap = g;
      best_i = i;
    }
  }

  double a = t0 + std::max(0, best_i - 1) * dt;
  double b = t0 + std::min(grid_points - 1, best_i + 1) * dt;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = gap_at(x1);
  double f2 = gap_at(x2);
  while (b - a > 1e-4 * (t1 - t0)) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = gap_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = gap_at(x2);
    }
  }
  const double t_star = f1 < f2 ? x1 : x2;
  const double g_star = std::min(f1, f2);
  return g_star < best_gap ? MinimumGap{g_star, t_star}
                           : MinimumGap{best_gap, t0 + best_i * dt};
}

}  // namespace pensim
