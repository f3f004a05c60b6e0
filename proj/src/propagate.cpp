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

#include "pensim/propagate.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <utility>

#include "pensim/errors.hpp"

namespace pensim {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;

// Clusters whose per-state codespace overlap falls below 1 - kCodeFracTol
// count as excitation targets. A cluster that merges codespace and
// non-codespace states is included: error detection kills the codespace
// contribution to its transition amplitudes on its own.
constexpr double kCodeFracTol = 1e-6;

// Dormand-Prince 5(4). Row 6 of the increment table doubles as the
// 5th-order weights (first-same-as-last), and kErr = b5 - b4 yields the
// embedded error estimate.
constexpr double kStageC[7] = {0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0};
constexpr double kStageA[7][6] = {
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656,
     0},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kErr[7] = {
    71.0 / 57600, 0.0,      -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200,
    22.0 / 525,   -1.0 / 40};

double trace_norm_of(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  return svd.singularValues().sum();
}

// drho/dt = -i[H(t), rho] + D_t[rho], with the dissipator evaluated in the
// instantaneous eigenbasis through the Bohr block structure. t must already
// lie in [0, t_f].
MatrixXcd rhs_at(const PreparedSystem& sys, double t, const MatrixXcd& rho) {
  MatrixXcd h;
  sys.dense.hamiltonian(t, h, nullptr);
  const std::complex<double> mi(0.0, -1.0);
  if (!sys.dissipative) {
    return mi * (h * rho - rho * h);
  }

  const SpectralData spec = eigendecompose(h, -1.0, t);
  const MatrixXcd& v = spec.basis;
  const MatrixXcd rho_e = v.adjoint() * rho * v;
  const Index d = rho.rows();
  const auto& st = spec.start;
  const auto size_of = [&st](int c) { return st[c + 1] - st[c]; };

  MatrixXcd out(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      out(i, j) =
          mi * (spec.eigenvalues(i) - spec.eigenvalues(j)) * rho_e(i, j);
    }
  }

  MatrixXcd damp = MatrixXcd::Zero(d, d);  // sum_c rate_c F_c^+ F_c
  for (std::size_t a = 0; a < sys.couplings.size(); ++a) {
    const MatrixXcd fe = v.adjoint() * sys.couplings[a] * v;
    const auto channels = bohr_channels(spec, fe);
    for (const auto& ch : channels) {
      const double rate = sys.weights[a] * gamma(sys.bath, ch.omega);
      if (rate == 0.0) continue;
      for (const auto& blk : ch.blocks) {
        const auto fab =
            fe.block(st[blk.a], st[blk.b], size_of(blk.a), size_of(blk.b));
        damp.block(st[blk.b], st[blk.b], size_of(blk.b), size_of(blk.b))
            .noalias() += rate * (fab.adjoint() * fab);
        for (const auto& blk2 : ch.blocks) {
          const auto fab2 = fe.block(st[blk2.a], st[blk2.b], size_of(blk2.a),
                                     size_of(blk2.b));
          out.block(st[blk.a], st[blk2.a], size_of(blk.a), size_of(blk2.a))
              .noalias() +=
              rate * (fab *
                      rho_e.block(st[blk.b], st[blk2.b], size_of(blk.b),
                                  size_of(blk2.b)) *
                      fab2.adjoint());
        }
      }
    }
  }
  out.noalias() -= 0.5 * (damp * rho_e + rho_e * damp);
  return v * out * v.adjoint();
}

RateDecomposition rate_impl(const PreparedSystem& sys,
                            const SpectralData& spec, const MatrixXcd& h_dot,
                            const MatrixXcd& rho) {
  RateDecomposition rd;
  const std::size_t n_clusters = spec.clusters.size();
  const auto& st = spec.start;
  const MatrixXcd rho_e = spec.basis.adjoint() * rho * spec.basis;
  const MatrixXcd pc_e = spec.basis.adjoint() * sys.codespace * spec.basis;

  rd.gap = spec.gap;
  rd.cluster_energies.reserve(n_clusters);
  rd.cluster_in_code.reserve(n_clusters);
  for (std::size_t c = 0; c < n_clusters; ++c) {
    rd.cluster_energies.push_back(spec.clusters[c].energy);
    const int lo = st[c];
    const int w = st[c + 1] - lo;
    const double frac = pc_e.block(lo, lo, w, w).trace().real() / w;
    rd.cluster_in_code.push_back(frac >= 1.0 - kCodeFracTol);
  }

  const double beta = sys.bath.beta;
  rd.min_m = std::numeric_limits<double>::infinity();
  rd.m.resize(sys.couplings.size());
  for (std::size_t a = 0; a < sys.couplings.size(); ++a) {
    const MatrixXcd fe = spec.basis.adjoint() * sys.couplings[a] * spec.basis;
    auto& ma = rd.m[a];
    ma = Eigen::MatrixXd::Zero(n_clusters, n_clusters);
    for (std::size_t ca = 0; ca < n_clusters; ++ca) {
      const int alo = st[ca];
      const int aw = st[ca + 1] - alo;
      const auto rho_aa = rho_e.block(alo, alo, aw, aw);
      for (std::size_t cb = 0; cb < n_clusters; ++cb) {
        const int blo = st[cb];
        const int bw = st[cb + 1] - blo;
        const auto g = fe.block(blo, alo, bw, aw);  // Pi_b F Pi_a
        const double val = (rho_aa * (g.adjoint() * g)).trace().real();
        ma(static_cast<Index>(ca), static_cast<Index>(cb)) = val;
        rd.min_m = std::min(rd.min_m, val);
      }
    }
    for (std::size_t l = 1; l < n_clusters; ++l) {
      const double de = rd.cluster_energies[l] - rd.cluster_energies[0];
      rd.diag += sys.weights[a] * gamma(sys.bath, de) *
                 (ma(static_cast<Index>(l), 0) -
                  std::exp(-beta * de) * ma(0, static_cast<Index>(l)));
      if (!rd.cluster_in_code[l]) {
        rd.sum_m_excite += ma(0, static_cast<Index>(l));
      }
    }
  }
  if (!std::isfinite(rd.min_m)) rd.min_m = 0.0;

  const double w_max =
      sys.weights.empty()
          ? 0.0
          : *std::max_element(sys.weights.begin(), sys.weights.end());
  rd.min_excitation_energy = std::numeric_limits<double>::infinity();
  for (std::size_t l = 1; l < n_clusters; ++l) {
    if (rd.cluster_in_code[l]) continue;
    const double de = rd.cluster_energies[l] - rd.cluster_energies[0];
    rd.min_excitation_energy = std::min(rd.min_excitation_energy, de);
    rd.gamma_tilde = std::max(rd.gamma_tilde, w_max * gamma(sys.bath, de));
  }

  if (n_clusters > 1) {
    const MatrixXcd s = reduced_resolvent(spec);
    rd.offdiag =
        -2.0 * (s * h_dot * spec.ground_projector() * rho).trace().real();
  }
  rd.total = rd.diag + rd.offdiag;
  return rd;
}

TrajectoryPoint observe(const PreparedSystem& sys, double t,
                        const MatrixXcd& rho) {
  MatrixXcd h, h_dot;
  sys.dense.hamiltonian(t, h, &h_dot);
  const SpectralData spec = eigendecompose(h, -1.0, t);
  const RateDecomposition rd = rate_impl(sys, spec, h_dot, rho);

  TrajectoryPoint p;
  p.t = t;
  p.rate_total = rd.total;
  p.rate_diag = rd.diag;
  p.rate_offdiag = rd.offdiag;
  p.sum_m_excite = rd.sum_m_excite;
  p.min_m = rd.min_m;
  p.gamma_tilde = rd.gamma_tilde;
  p.gap = rd.gap;
  p.min_excitation_energy = rd.min_excitation_energy;

  const Index d = rho.rows();
  const MatrixXcd rho_e = spec.basis.adjoint() * rho * spec.basis;
  const Index s0 = spec.start[1];
  p.p_perp = rho_e.bottomRightCorner(d - s0, d - s0).trace().real();
  p.coherence_norm = trace_norm_of(rho_e.topRightCorner(s0, d - s0));
  p.codespace_leakage = 1.0 - (sys.codespace * rho).trace().real();
  p.trace_error = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));

  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (rho + rho.adjoint()),
                                              Eigen::EigenvaluesOnly);
  p.min_eig = es.eigenvalues().minCoeff();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> ed(h_dot, Eigen::EigenvaluesOnly);
  p.h_dot_norm = ed.eigenvalues().cwiseAbs().maxCoeff();
  return p;
}

double error_norm(const MatrixXcd& err, const MatrixXcd& y0,
                  const MatrixXcd& y1, double atol, double rtol) {
  const Index n = err.size();
  const std::complex<double>* pe = err.data();
  const std::complex<double>* p0 = y0.data();
  const std::complex<double>* p1 = y1.data();
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::max(std::abs(p0[i]), std::abs(p1[i]));
    const double q = std::abs(pe[i]) / sc;
    acc += q * q;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace

PreparedSystem prepare(const Model& model, const BathModel& bath) {
  validate_bath(bath, model.code.n);
  PreparedSystem sys;
  sys.model = model;
  sys.bath = bath;
  sys.dense = assemble_dense(model);
  sys.codespace = sys.dense.codespace;
  const DiagonalizedCouplings diag = diagonalize_rate_matrix(bath);
  sys.weights = diag.weights;
  sys.couplings.reserve(diag.ops.size());
  for (const auto& op : diag.ops) {
    sys.couplings.push_back(to_dense(op));
  }
  sys.dissipative = bath.kappa > 0.0 && !sys.couplings.empty();
  return sys;
}

Eigen::MatrixXcd initial_state(const PreparedSystem& sys) {
  MatrixXcd h;
  sys.dense.hamiltonian(0.0, h, nullptr);
  const SpectralData spec = eigendecompose(h, -1.0, 0.0);
  return spec.ground_projector() /
         static_cast<double>(spec.ground().multiplicity);
}

Eigen::MatrixXcd generator_rhs(const PreparedSystem& sys, double t,
                               const Eigen::MatrixXcd& rho) {
  if (rho.rows() != sys.dense.dim || rho.cols() != sys.dense.dim) {
    throw DimensionError("state dimension does not match the model");
  }
  return rhs_at(sys, t, rho);
}

RateDecomposition rate_decomposition(const PreparedSystem& sys, double t,
                                     const Eigen::MatrixXcd& rho) {
  if (rho.rows() != sys.dense.dim || rho.cols() != sys.dense.dim) {
    throw DimensionError("state dimension does not match the model");
  }
  MatrixXcd h, h_dot;
  sys.dense.hamiltonian(t, h, &h_dot);
  const SpectralData spec = eigendecompose(h, -1.0, t);
  return rate_impl(sys, spec, h_dot, rho);
}

Trajectory evolve(const PreparedSystem& sys, const Eigen::MatrixXcd& rho0,
                  const EvolveOptions& opts) {
  const double t_f = sys.dense.schedule.t_f;
  const Index d = sys.dense.dim;
  if (rho0.rows() != d || rho0.cols() != d) {
    throw DimensionError("initial state dimension does not match the model");
  }
  const double scale = std::max(1.0, rho0.cwiseAbs().maxCoeff());
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw ValidationError("initial state is not Hermitian");
  }
  if (std::abs(rho0.trace() - std::complex<double>(1.0, 0.0)) > 1e-8) {
    throw ValidationError("initial state does not have unit trace");
  }
  {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (rho0 + rho0.adjoint()),
                                                Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) {
      throw ValidationError("initial state is not positive semidefinite");
    }
  }

  const IntegratorOptions& io = opts.integrator;
  if (!(io.rtol > 0.0) || io.rtol > 1.0) {
    throw ValidationError("rtol must lie in (0, 1]");
  }
  if (io.atol < 0.0 || io.atol > 1.0) {
    throw ValidationError("atol must lie in [0, 1]");
  }
  if (io.fixed_dt < 0.0 || !std::isfinite(io.fixed_dt)) {
    throw ValidationError("fixed_dt must be finite and >= 0");
  }
  if (io.max_steps < 1) {
    throw ValidationError("max_steps must be positive");
  }
  if (!(io.safety > 0.0) || io.safety > 1.0) {
    throw ValidationError("safety factor must lie in (0, 1]");
  }

  std::vector<double> times = opts.snapshot_times;
  if (times.empty()) {
    if (t_f == 0.0) {
      times.push_back(0.0);
    } else {
      if (opts.snapshots < 2) {
        throw ValidationError("snapshot grid needs at least 2 points");
      }
      times.resize(opts.snapshots);
      for (int i = 0; i < opts.snapshots; ++i) {
        times[i] = t_f * static_cast<double>(i) /
                   static_cast<double>(opts.snapshots - 1);
      }
      times.back() = t_f;
    }
  } else {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (!(times[i] >= 0.0) || times[i] > t_f) {
        throw ValidationError("snapshot times must lie in [0, t_f]");
      }
      if (i > 0 && times[i] <= times[i - 1]) {
        throw ValidationError("snapshot times must be strictly increasing");
      }
    }
  }

  if (opts.require_ground_support) {
    MatrixXcd h0;
    sys.dense.hamiltonian(0.0, h0, nullptr);
    const SpectralData spec0 = eigendecompose(h0, -1.0, 0.0);
    const MatrixXcd& pi0 = spec0.ground_projector();
    if (trace_norm_of(rho0 - pi0 * rho0 * pi0) > 1e-10) {
      throw ValidationError(
          "initial state has support outside the ground cluster of H(0)");
    }
  }

  Trajectory traj;
  traj.points.reserve(times.size());
  if (opts.store_states) traj.states.reserve(times.size());

  MatrixXcd rho = rho0;
  double t_cur = 0.0;
  const double t_end_total = times.back();
  const double h_floor = 1e-13 * std::max(t_end_total, 1.0);

  auto rhs = [&](double t, const MatrixXcd& y) {
    ++traj.stats.rhs_evaluations;
    return rhs_at(sys, std::clamp(t, 0.0, t_end_total), y);
  };

  auto record = [&](double t) {
    TrajectoryPoint p = observe(sys, t, rho);
    if (p.min_eig < -opts.positivity_tol) {
      std::ostringstream msg;
      msg << "state positivity violated at t = " << t << " (min eigenvalue "
          << p.min_eig << ")";
      throw NumericError(msg.str());
    }
    if (p.trace_error > 1e-6) {
      std::ostringstream msg;
      msg << "trace drift " << p.trace_error << " at t = " << t;
      throw NumericError(msg.str());
    }
    traj.points.push_back(std::move(p));
    if (opts.store_states) traj.states.push_back(rho);
  };

  auto stiffness_error = [&](double t, double h) -> NumericError {
    std::ostringstream msg;
    msg << "step size underflow (h = " << h << ") at t = " << t;
    try {
      MatrixXcd h_mat;
      sys.dense.hamiltonian(t, h_mat, nullptr);
      const SpectralData spec = eigendecompose(h_mat, -1.0, t);
      double rate_max = 0.0;
      for (std::size_t a = 0; a < sys.couplings.size(); ++a) {
        for (double w : spec.bohr_frequencies) {
          rate_max = std::max(rate_max, sys.weights[a] * gamma(sys.bath, w));
        }
      }
      msg << "; smallest cluster gap " << spec.gap << ", largest thermal rate "
          << rate_max;
    } catch (const std::exception&) {
      // diagnostics are best-effort
    }
    return NumericError(msg.str());
  };

  std::array<MatrixXcd, 7> k;
  bool have_k1 = false;
  MatrixXcd ytmp;
  long attempts = 0;

  // One attempted step of size h from (t_cur, rho). Fills k[1..6] and
  // leaves the 5th-order solution in ytmp; returns the scaled error norm.
  auto attempt_step = [&](double h) -> double {
    for (int s = 1; s < 7; ++s) {
      ytmp = rho;
      for (int j = 0; j < s; ++j) {
        if (kStageA[s][j] != 0.0) {
          ytmp.noalias() += (h * kStageA[s][j]) * k[j];
        }
      }
      k[s] = rhs(t_cur + kStageC[s] * h, ytmp);
    }
    MatrixXcd err = (h * kErr[0]) * k[0];
    for (int j = 2; j < 7; ++j) {
      err.noalias() += (h * kErr[j]) * k[j];
    }
    return error_norm(err, rho, ytmp, io.atol, io.rtol);
  };

  double h_nat = std::clamp(1e-3 * std::max(t_end_total, 1e-6), 1e-6, 0.1);

  for (const double t_target : times) {
    if (io.fixed_dt > 0.0) {
      const double seg = t_target - t_cur;
      if (seg > 0.0) {
        const long n_sub = std::max<long>(
            1, static_cast<long>(std::ceil(seg / io.fixed_dt - 1e-12)));
        const double dt = seg / static_cast<double>(n_sub);
        for (long i = 0; i < n_sub; ++i) {
          if (++attempts > io.max_steps) {
            throw NumericError("integration exceeded max_steps");
          }
          if (!have_k1) {
            k[0] = rhs(t_cur, rho);
            have_k1 = true;
          }
          attempt_step(dt);
          t_cur = i + 1 == n_sub ? t_target : t_cur + dt;
          rho.swap(ytmp);
          k[0].swap(k[6]);
          ++traj.stats.steps_accepted;
        }
      }
    } else {
      while (t_cur < t_target) {
        if (++attempts > io.max_steps) {
          throw NumericError("integration exceeded max_steps");
        }
        if (!have_k1) {
          k[0] = rhs(t_cur, rho);
          have_k1 = true;
        }
        const double remaining = t_target - t_cur;
        const double h = std::min(h_nat, remaining);
        const double err = attempt_step(h);
        if (err <= 1.0) {
          t_cur = h >= remaining ? t_target : t_cur + h;
          rho.swap(ytmp);
          k[0].swap(k[6]);
          ++traj.stats.steps_accepted;
          const double factor =
              err > 0.0 ? std::clamp(io.safety * std::pow(err, -0.2), 0.2, 5.0)
                        : 5.0;
          h_nat = h * factor;
        } else {
          ++traj.stats.steps_rejected;
          h_nat = h * std::clamp(io.safety * std::pow(err, -0.2), 0.2, 1.0);
        }
        if (h_nat < h_floor) {
          throw stiffness_error(t_cur, h_nat);
        }
      }
    }
    record(t_target);
  }
  return traj;
}

Trajectory evolve(const PreparedSystem& sys, const EvolveOptions& opts) {
  return evolve(sys, initial_state(sys), opts);
}

double rate_identity_violation(const Trajectory& trajectory) {
  const auto& pts = trajectory.points;
  if (pts.size() < 5) return 0.0;
  const double h = pts[1].t - pts[0].t;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (std::abs(pts[i].t - pts[i - 1].t - h) > 1e-9 * std::max(h, 1.0)) {
      throw ValidationError(
          "rate_identity_violation needs a uniform snapshot grid");
    }
  }
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < pts.size(); ++i) {
    // d/dt Tr[Pi_0 rho] = -d/dt p_perp, fourth-order central stencil.
    const double fd = -(-pts[i + 2].p_perp + 8.0 * pts[i + 1].p_perp -
                        8.0 * pts[i - 1].p_perp + pts[i - 2].p_perp) /
                      (12.0 * h);
    const double scale = std::max(1e-4 * std::abs(pts[i].rate_total), 1e-8);
    worst = std::max(worst, std::abs(fd - pts[i].rate_total) / scale);
  }
  return worst;
}

}  // namespace pensim
