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

#include "pensim/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pensim {

namespace {

// Blocks with Frobenius norm below this fraction of the whole operator are
// treated as exact zeros of the Pauli block structure.
constexpr double kBlockDropTol = 1e-14;

double default_delta_omega(const SpectralData& spec) {
  const double span = spec.eigenvalues(spec.eigenvalues.size() - 1) -
                      spec.eigenvalues(0);
  return std::max(kBohrTolRel * span, 1e-13);
}

}  // namespace

void validate_bath(const BathModel& bath, int n_qubits) {
  if (!(bath.beta > 0.0) || !std::isfinite(bath.beta)) {
    throw ValidationError("bath beta must be positive and finite");
  }
  if (!(bath.omega_c > 0.0) || !std::isfinite(bath.omega_c)) {
    throw ValidationError("bath omega_c must be positive and finite");
  }
  if (!(bath.kappa >= 0.0) || !std::isfinite(bath.kappa)) {
    throw ValidationError("bath kappa must be >= 0 and finite");
  }
  for (const Coupling& c : bath.couplings) {
    if (c.profile != "ohmic") {
      throw ValidationError("unknown rate profile \"" + c.profile + "\"");
    }
    if (c.op.n_qubits() != n_qubits) {
      throw DimensionError("coupling " + c.op.to_string() + " acts on " +
                           std::to_string(c.op.n_qubits()) +
                           " qubits, expected " + std::to_string(n_qubits));
    }
    if (std::abs(c.op.phase().real() - 1.0) > 0.5) {
      throw ValidationError("coupling " + c.op.to_string() +
                            " must be a phase-free Pauli string");
    }
    if (c.op.weight() < 1 || c.op.weight() > 2) {
      throw ValidationError("coupling " + c.op.to_string() +
                            " must have weight 1 or 2");
    }
  }
  if (bath.correlation.size() != 0) {
    const auto m = static_cast<Eigen::Index>(bath.couplings.size());
    if (bath.correlation.rows() != m || bath.correlation.cols() != m) {
      throw DimensionError("correlation matrix must match the number of "
                           "couplings");
    }
    if ((bath.correlation - bath.correlation.transpose())
            .cwiseAbs()
            .maxCoeff() > 1e-12) {
      throw ValidationError("correlation matrix must be symmetric");
    }
  }
}

std::vector<Coupling> coupling_preset(std::string_view name, int n_qubits) {
  if (name == "x_and_z_all_qubits") {
    std::vector<Coupling> out;
    for (int q = 0; q < n_qubits; ++q) {
      out.push_back({PauliTerm::single(n_qubits, q, 'X'), "ohmic"});
      out.push_back({PauliTerm::single(n_qubits, q, 'Z'), "ohmic"});
    }
    return out;
  }
  throw ValidationError("unknown coupling preset \"" + std::string(name) +
                        "\"");
}

double gamma(const BathModel& bath, double omega) {
  if (!std::isfinite(omega)) throw ValidationError("omega must be finite");
  if (bath.kappa == 0.0) return 0.0;
  const double two_pi_kappa = 2.0 * std::numbers::pi * bath.kappa;
  if (omega == 0.0) return two_pi_kappa / bath.beta;
  const double cutoff = std::exp(-std::abs(omega) / bath.omega_c);
  // -expm1(-beta w) = 1 - e^{-beta w}, accurate for small arguments.
  return two_pi_kappa * omega * cutoff / (-std::expm1(-bath.beta * omega));
}

DiagonalizedCouplings diagonalize_rate_matrix(const BathModel& bath) {
  DiagonalizedCouplings out;
  const std::size_t m = bath.couplings.size();
  if (m == 0) return out;
  const int n = bath.couplings.front().op.n_qubits();
  validate_bath(bath, n);

  if (bath.correlation.size() == 0) {
    for (const Coupling& c : bath.couplings) {
      PauliSum s(n);
      s.add(1.0, c.op);
      out.ops.push_back(std::move(s));
      out.weights.push_back(1.0);
    }
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(bath.correlation);
  const double top = solver.eigenvalues().cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (solver.eigenvalues()(i) < -1e-12 * std::max(top, 1.0)) {
      throw ValidationError(
          "correlation matrix is indefinite (eigenvalue " +
          std::to_string(solver.eigenvalues()(i)) + ")");
    }
  }
  // Largest weight first.
  for (Eigen::Index col = solver.eigenvalues().size() - 1; col >= 0; --col) {
    PauliSum s(n);
    for (std::size_t row = 0; row < m; ++row) {
      const double u = solver.eigenvectors()(static_cast<Eigen::Index>(row),
                                             col);
      if (u != 0.0) s.add(u, bath.couplings[row].op);
    }
    out.ops.push_back(std::move(s));
    out.weights.push_back(std::max(0.0, solver.eigenvalues()(col)));
  }
  return out;
}

std::vector<BohrChannel> bohr_channels(const SpectralData& spec,
                                       const Eigen::MatrixXcd& f_eigenbasis,
                                       double delta_omega) {
  const double width =
      delta_omega > 0.0 ? delta_omega : default_delta_omega(spec);
  const double drop =
      kBlockDropTol * std::max(f_eigenbasis.norm(), 1e-300);
  const int n_clusters = static_cast<int>(spec.clusters.size());

  struct Entry {
    double omega;
    BohrBlock block;
  };
  std::vector<Entry> entries;
  for (int a = 0; a < n_clusters; ++a) {
    for (int b = 0; b < n_clusters; ++b) {
      const int ra = spec.start[static_cast<std::size_t>(a)];
      const int rb = spec.start[static_cast<std::size_t>(b)];
      const int ma = spec.clusters[static_cast<std::size_t>(a)].multiplicity;
      const int mb = spec.clusters[static_cast<std::size_t>(b)].multiplicity;
      if (f_eigenbasis.block(ra, rb, ma, mb).norm() <= drop) continue;
      const double omega =
          a == b ? 0.0
                 : spec.clusters[static_cast<std::size_t>(b)].energy -
                       spec.clusters[static_cast<std::size_t>(a)].energy;
      entries.push_back({omega, {a, b}});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.omega < y.omega; });

  std::vector<BohrChannel> channels;
  std::size_t i = 0;
  while (i < entries.size()) {
    std::size_t j = i + 1;
    double sum = entries[i].omega;
    while (j < entries.size() &&
           entries[j].omega - entries[j - 1].omega <= width) {
      sum += entries[j].omega;
      ++j;
    }
    BohrChannel ch;
    ch.omega = sum / static_cast<double>(j - i);
    if (std::abs(ch.omega) <= width) ch.omega = 0.0;
    for (std::size_t p = i; p < j; ++p) ch.blocks.push_back(entries[p].block);
    channels.push_back(std::move(ch));
    i = j;
  }
  return channels;
}

LindbladOperatorSet lindblad_operators(
    const std::vector<Eigen::MatrixXcd>& couplings,
    const std::vector<double>& weights, const SpectralData& spec,
    const BathModel& bath, double delta_omega) {
  if (couplings.size() != weights.size()) {
    throw DimensionError("couplings and weights must have equal length");
  }
  const Eigen::Index dim = spec.basis.rows();
  LindbladOperatorSet set;
  set.n_sources = couplings.size();
  set.dim = dim;
  for (std::size_t alpha = 0; alpha < couplings.size(); ++alpha) {
    if (couplings[alpha].rows() != dim || couplings[alpha].cols() != dim) {
      throw DimensionError("coupling operator dimension mismatch");
    }
    const Eigen::MatrixXcd f_tilde =
        spec.basis.adjoint() * couplings[alpha] * spec.basis;
    for (const BohrChannel& ch :
         bohr_channels(spec, f_tilde, delta_omega)) {
      Eigen::MatrixXcd op_tilde = Eigen::MatrixXcd::Zero(dim, dim);
      for (const BohrBlock& blk : ch.blocks) {
        const int ra = spec.start[static_cast<std::size_t>(blk.a)];
        const int rb = spec.start[static_cast<std::size_t>(blk.b)];
        const int ma =
            spec.clusters[static_cast<std::size_t>(blk.a)].multiplicity;
        const int mb =
            spec.clusters[static_cast<std::size_t>(blk.b)].multiplicity;
        op_tilde.block(ra, rb, ma, mb) = f_tilde.block(ra, rb, ma, mb);
      }
      LindbladChannel out;
      out.source = static_cast<int>(alpha);
      out.omega = ch.omega;
      out.rate = weights[alpha] * gamma(bath, ch.omega);
      out.op = spec.basis * op_tilde * spec.basis.adjoint();
      set.channels.push_back(std::move(out));
    }
  }
  return set;
}

}  // namespace pensim
