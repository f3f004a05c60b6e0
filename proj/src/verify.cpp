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

#include "pensim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pensim/bath.hpp"
#include "pensim/codes.hpp"
#include "pensim/davies.hpp"
#include "pensim/errors.hpp"
#include "pensim/model.hpp"
#include "pensim/pauli.hpp"
#include "pensim/propagate.hpp"
#include "pensim/spectral.hpp"

namespace pensim {

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.passed; });
}

namespace {

// Every pair of two-qubit Pauli strings: dense product matches the tracked
// phase, and the symplectic commutation test matches the dense commutator
// (whose largest entry is exactly 2 for anticommuting strings).
VerifyCheck check_pauli_algebra() {
  VerifyCheck check;
  check.name = "pauli_algebra";
  check.tolerance = 1e-12;

  std::vector<PauliTerm> terms;
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  for (const char a : letters) {
    for (const char b : letters) {
      terms.push_back(PauliTerm::from_string(std::string{a, b}));
    }
  }
  double worst = 0.0;
  for (const PauliTerm& a : terms) {
    const Eigen::MatrixXcd da = to_dense(a);
    for (const PauliTerm& b : terms) {
      const Eigen::MatrixXcd db = to_dense(b);
      const Eigen::MatrixXcd product = da * db;
      worst = std::max(
          worst, (product - to_dense(multiply(a, b))).cwiseAbs().maxCoeff());
      const double comm = (product - db * da).cwiseAbs().maxCoeff();
      const double expected = commutes(a, b) ? 0.0 : 2.0;
      worst = std::max(worst, std::abs(comm - expected));
    }
  }
  check.violation = worst;
  check.passed = worst <= check.tolerance;
  return check;
}

VerifyCheck check_code_detection(const StabilizerCode& code) {
  VerifyCheck check;
  check.name = "code_detection";
  check.tolerance = 1e-12;
  double worst = 0.0;
  if (code.d >= 2) {
    for (const DetectionViolation& v : verify_detection(code, code.d - 1)) {
      worst = std::max(worst, v.norm);
    }
  }
  check.violation = worst;
  check.passed = worst <= check.tolerance;
  return check;
}

VerifyCheck check_kms(const BathModel& bath, VerifyMutation mutation) {
  VerifyCheck check;
  check.name = "kms_rate_relation";
  check.tolerance = 1e-9;
  double worst = 0.0;
  if (bath.kappa > 0.0) {
    const double sign =
        mutation == VerifyMutation::kms_sign_flip ? 1.0 : -1.0;
    for (const double w : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
      const double ratio = gamma(bath, -w) / gamma(bath, w);
      worst = std::max(worst,
                       std::abs(ratio - std::exp(sign * bath.beta * w)));
    }
  }
  check.violation = worst;
  check.passed = worst <= check.tolerance;
  return check;
}

VerifyCheck check_markov_balance(const PreparedSystem& sys) {
  VerifyCheck check;
  check.name = "markov_detailed_balance";
  check.tolerance = 1e-9;
  const double t = 0.5 * sys.model.schedule.t_f;
  Eigen::MatrixXcd h;
  sys.dense.hamiltonian(t, h);
  const SpectralData spec = eigendecompose(h, -1.0, t);
  const TransitionMatrix tm =
      markov_matrix(spec, sys.couplings, sys.weights, sys.bath);
  check.violation = check_detailed_balance(tm, sys.bath.beta);
  check.passed = check.violation <= check.tolerance;
  return check;
}

VerifyCheck check_gibbs_fixed_point(const PreparedSystem& sys) {
  VerifyCheck check;
  check.name = "gibbs_fixed_point";
  check.tolerance = 1e-8;
  if (sys.dissipative) {
    const double t = 0.5 * sys.model.schedule.t_f;
    const GeneratorSnapshot snap = generator_matrix(sys.model, sys.bath, t);
    check.violation = trace_distance(stationary_state(snap.superoperator),
                                     gibbs_state(snap.hamiltonian,
                                                 sys.bath.beta));
  }
  check.passed = check.violation <= check.tolerance;
  return check;
}

// Finite differences of the ground-cluster population along a short
// fine-grained trajectory must reproduce the analytic rate decomposition.
// A fourth-order stencil keeps truncation below the tolerance even where
// diabatic coherences make the population oscillate at the largest Bohr
// frequencies. Violations are normalized by max(1e-4 |R|, 1e-8), so the
// tolerance is 1.
VerifyCheck check_rate_identity(const RunConfig& config) {
  VerifyCheck check;
  check.name = "population_rate_identity";
  check.tolerance = 1.0;

  RunConfig cfg = config;
  cfg.schedule.t_f = 10.0;
  cfg.grid = 2001;
  cfg.integrator.rtol = std::min(config.integrator.rtol, 1e-9);

  const Model model = build_model(cfg);
  const BathModel bath = build_bath(cfg, model.code.n);
  const PreparedSystem sys = prepare(model, bath);
  EvolveOptions opts;
  opts.integrator = cfg.integrator;
  opts.snapshots = cfg.grid;
  const Trajectory traj = evolve(sys, opts);

  check.violation = rate_identity_violation(traj);
  check.passed = check.violation <= check.tolerance;
  return check;
}

}  // namespace

VerifyReport verify_suite(const RunConfig& config, VerifyMutation mutation) {
  const StabilizerCode code = build_config_code(config);
  if (code.n > kMaxDenseQubits) {
    throw ResourceError("configured code has " + std::to_string(code.n) +
                        " qubits; verification is dense and capped at " +
                        std::to_string(kMaxDenseQubits));
  }
  const Model model = build_model(config);
  const BathModel bath = build_bath(config, model.code.n);
  const PreparedSystem sys = prepare(model, bath);

  VerifyReport report;
  report.checks.push_back(check_pauli_algebra());
  report.checks.push_back(check_code_detection(code));
  report.checks.push_back(check_kms(bath, mutation));
  report.checks.push_back(check_markov_balance(sys));
  report.checks.push_back(check_gibbs_fixed_point(sys));
  report.checks.push_back(check_rate_identity(config));
  return report;
}

}  // namespace pensim
