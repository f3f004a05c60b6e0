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

#include "pensim/davies.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <limits>

#include "pensim/errors.hpp"

namespace pensim {

namespace {

using Eigen::MatrixXcd;

void check_state(const MatrixXcd& rho) {
  if (rho.rows() != rho.cols()) {
    throw DimensionError("state must be square");
  }
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw ValidationError("state is not Hermitian");
  }
  if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > 1e-8) {
    throw ValidationError("state does not have unit trace");
  }
}

}  // namespace

MatrixXcd dissipator_apply(const LindbladOperatorSet& ops, const MatrixXcd& rho,
                           bool validate) {
  if (validate) {
    check_state(rho);
  }
  if (rho.rows() != ops.dim) {
    throw DimensionError("state dimension does not match jump operators");
  }
  MatrixXcd out = MatrixXcd::Zero(rho.rows(), rho.cols());
  for (const auto& ch : ops.channels) {
    if (ch.rate == 0.0) continue;
    const MatrixXcd f_rho = ch.op * rho;
    const MatrixXcd ff = ch.op.adjoint() * ch.op;
    out.noalias() += ch.rate * (f_rho * ch.op.adjoint());
    out.noalias() -= (0.5 * ch.rate) * (ff * rho + rho * ff);
  }
  return out;
}

MatrixXcd apply_generator(const MatrixXcd& h, const LindbladOperatorSet& ops,
                          const MatrixXcd& rho) {
  const std::complex<double> mi(0.0, -1.0);
  MatrixXcd out = mi * (h * rho - rho * h);
  out += dissipator_apply(ops, rho, false);
  return out;
}

MatrixXcd liouvillian_superoperator(const MatrixXcd& h,
                                    const LindbladOperatorSet& ops) {
  const Eigen::Index d = h.rows();
  if (h.cols() != d) {
    throw DimensionError("Hamiltonian must be square");
  }
  if (d != ops.dim) {
    throw DimensionError("Hamiltonian dimension does not match jump operators");
  }
  const MatrixXcd id = MatrixXcd::Identity(d, d);
  const std::complex<double> mi(0.0, -1.0);
  MatrixXcd sup =
      mi * (Eigen::kroneckerProduct(id, h) -
            Eigen::kroneckerProduct(h.transpose(), id));
  for (const auto& ch : ops.channels) {
    if (ch.rate == 0.0) continue;
    const MatrixXcd ff = ch.op.adjoint() * ch.op;
    sup.noalias() +=
        ch.rate * Eigen::kroneckerProduct(ch.op.conjugate(), ch.op);
    sup.noalias() -=
        (0.5 * ch.rate) * Eigen::kroneckerProduct(id, ff);
    sup.noalias() -=
        (0.5 * ch.rate) * Eigen::kroneckerProduct(ff.transpose(), id);
  }
  return sup;
}

GeneratorSnapshot generator_matrix(const Model& model, const BathModel& bath,
                                   double t) {
  const DenseModel dense = assemble_dense(model);
  GeneratorSnapshot snap;
  snap.t = t;
  dense.hamiltonian(t, snap.hamiltonian, nullptr);
  snap.spectrum = eigendecompose(snap.hamiltonian, -1.0, t);

  const DiagonalizedCouplings diag = diagonalize_rate_matrix(bath);
  std::vector<MatrixXcd> sources;
  sources.reserve(diag.ops.size());
  for (const auto& op : diag.ops) {
    sources.push_back(to_dense(op));
  }
  snap.ops = lindblad_operators(sources, diag.weights, snap.spectrum, bath);
  snap.superoperator = liouvillian_superoperator(snap.hamiltonian, snap.ops);
  return snap;
}

TransitionMatrix markov_matrix(const SpectralData& spec,
                               const std::vector<MatrixXcd>& couplings,
                               const std::vector<double>& weights,
                               const BathModel& bath) {
  if (couplings.size() != weights.size()) {
    throw DimensionError("one weight per coupling operator is required");
  }
  const auto n_clusters = static_cast<Eigen::Index>(spec.clusters.size());
  TransitionMatrix tm;
  tm.w = Eigen::MatrixXd::Zero(n_clusters, n_clusters);
  tm.energies.reserve(spec.clusters.size());
  for (const auto& c : spec.clusters) {
    tm.energies.push_back(c.energy);
  }
  for (std::size_t a = 0; a < couplings.size(); ++a) {
    // Overlap in the eigenbasis so cluster blocks are contiguous slices.
    const MatrixXcd f_eig = spec.basis.adjoint() * couplings[a] * spec.basis;
    for (Eigen::Index to = 0; to < n_clusters; ++to) {
      const Eigen::Index to0 = spec.start[to];
      const Eigen::Index to_n = spec.start[to + 1] - to0;
      for (Eigen::Index from = 0; from < n_clusters; ++from) {
        const Eigen::Index from0 = spec.start[from];
        const Eigen::Index from_n = spec.start[from + 1] - from0;
        const double strength =
            f_eig.block(to0, from0, to_n, from_n).squaredNorm();
        const double omega = tm.energies[from] - tm.energies[to];
        tm.w(to, from) += weights[a] * gamma(bath, omega) * strength;
      }
    }
  }
  return tm;
}

double check_detailed_balance(const TransitionMatrix& tm, double beta,
                              double floor) {
  const Eigen::Index n = tm.w.rows();
  double worst = 0.0;
  for (Eigen::Index lo = 0; lo < n; ++lo) {
    for (Eigen::Index up = 0; up < n; ++up) {
      const double de = tm.energies[up] - tm.energies[lo];
      if (de <= 0.0) continue;  // count each pair once, uphill direction
      const double expected = std::exp(-beta * de) * tm.w(lo, up);
      const double got = tm.w(up, lo);
      const double denom = std::max({got, tm.w(lo, up), floor});
      worst = std::max(worst, std::abs(got - expected) / denom);
    }
  }
  return worst;
}

MatrixXcd gibbs_state(const MatrixXcd& h, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ValidationError("gibbs_state requires beta > 0");
  }
  const SpectralData spec = eigendecompose(h);
  // Shift by the ground energy before exponentiating to avoid overflow.
  const double e0 = spec.eigenvalues.minCoeff();
  Eigen::VectorXd boltz =
      (-beta * (spec.eigenvalues.array() - e0)).exp().matrix();
  boltz /= boltz.sum();
  return spec.basis * boltz.asDiagonal() * spec.basis.adjoint();
}

MatrixXcd stationary_state(const MatrixXcd& superoperator) {
  const Eigen::Index d2 = superoperator.rows();
  if (superoperator.cols() != d2) {
    throw DimensionError("superoperator must be square");
  }
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(d2))));
  if (d * d != d2) {
    throw DimensionError("superoperator size must be a perfect square");
  }
  Eigen::ComplexEigenSolver<MatrixXcd> solver(superoperator);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigendecomposition of the generator failed");
  }
  Eigen::Index best = 0;
  solver.eigenvalues().cwiseAbs().minCoeff(&best);
  Eigen::VectorXcd vec = solver.eigenvectors().col(best);
  // The generator is non-normal, and in the deep-freeze regime (large
  // beta * eta_p) its slowest relaxation mode crowds the null eigenvalue;
  // the eigensolver then separates the two only to eps * ||L|| / gap.
  // A few rounds of inverse iteration with a shift far below any physical
  // rate pull the candidate back onto the null space. Iterating on L
  // itself, not on the Gram matrix L^+ L, matters: squaring buries the
  // slow modes under the eps * ||L||^2 roundoff in the product.
  const double scale = superoperator.norm();
  if (scale > 0) {
    const Eigen::PartialPivLU<MatrixXcd> lu(
        superoperator +
        1e-15 * scale * MatrixXcd::Identity(d2, d2));
    Eigen::VectorXcd polished = vec;
    for (int it = 0; it < 3; ++it) {
      polished = lu.solve(polished);
      const double norm = polished.norm();
      if (!std::isfinite(norm) || norm == 0.0) {
        polished = vec;
        break;
      }
      polished /= norm;
    }
    vec = polished;
  }
  MatrixXcd rho = Eigen::Map<const MatrixXcd>(vec.data(), d, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const std::complex<double> tr = rho.trace();
  if (std::abs(tr) < 1e-12 * std::max(1.0, rho.cwiseAbs().maxCoeff())) {
    throw NumericError(
        "stationary candidate is traceless; generator null space is not a "
        "state");
  }
  return rho / tr.real();
}

double trace_distance(const MatrixXcd& a, const MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("trace_distance arguments must have equal shape");
  }
  const MatrixXcd diff = a - b;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(
      0.5 * (diff + diff.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigendecomposition failed in trace_distance");
  }
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace pensim
