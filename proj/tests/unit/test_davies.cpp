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

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "pensim/bath.hpp"
#include "pensim/config.hpp"
#include "pensim/davies.hpp"
#include "pensim/errors.hpp"
#include "pensim/propagate.hpp"
#include "pensim/spectral.hpp"

namespace {

using namespace pensim;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

MatrixXcd random_state(std::mt19937& rng, int dim) {
  std::normal_distribution<double> g;
  MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = std::complex<double>(g(rng), g(rng));
  MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

GeneratorSnapshot default_snapshot(double t, double eta = 4.0,
                                   double beta = 1.0) {
  RunConfig cfg = default_config();
  const Model model{build_config_code(cfg), cfg.problem, cfg.schedule, eta};
  BathModel bath = build_bath(cfg, model.code.n);
  bath.beta = beta;
  return generator_matrix(model, bath, t);
}

}  // namespace

TEST_SUITE("davies") {

TEST_CASE("amplitude damping dissipator matches its textbook form") {
  // Single decay channel F = |0><1| at rate r on one qubit.
  LindbladOperatorSet ops;
  ops.dim = 2;
  ops.n_sources = 1;
  MatrixXcd f = MatrixXcd::Zero(2, 2);
  f(0, 1) = 1.0;
  const double r = 0.37;
  ops.channels.push_back({0, -1.0, r, f});
  std::mt19937 rng(5);
  const MatrixXcd rho = random_state(rng, 2);
  const MatrixXcd got = dissipator_apply(ops, rho);
  MatrixXcd want(2, 2);
  want << r * rho(1, 1).real(), -0.5 * r * rho(0, 1),
      -0.5 * r * rho(1, 0), -r * rho(1, 1).real();
  CHECK((got - want).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("generator annihilates the trace of any state") {
  std::mt19937 rng(6);
  const GeneratorSnapshot snap = default_snapshot(25.0);
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixXcd rho = random_state(rng, 16);
    const MatrixXcd out = apply_generator(snap.hamiltonian, snap.ops, rho);
    CHECK(std::abs(out.trace()) < 1e-10);
    CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("dense superoperator reproduces the direct action") {
  std::mt19937 rng(7);
  const GeneratorSnapshot snap = default_snapshot(17.0);
  const MatrixXcd l = liouvillian_superoperator(snap.hamiltonian, snap.ops);
  CHECK((l - snap.superoperator).cwiseAbs().maxCoeff() < 1e-13);
  for (int trial = 0; trial < 3; ++trial) {
    const MatrixXcd rho = random_state(rng, 16);
    const MatrixXcd direct = apply_generator(snap.hamiltonian, snap.ops, rho);
    const VectorXcd vec = Eigen::Map<const VectorXcd>(rho.data(), 256);
    const VectorXcd flat = l * vec;
    const MatrixXcd lifted = Eigen::Map<const MatrixXcd>(flat.data(), 16, 16);
    CHECK((direct - lifted).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("transition rates are nonnegative and thermally balanced") {
  RunConfig cfg = default_config();
  const Model model{build_config_code(cfg), cfg.problem, cfg.schedule, 2.0};
  const BathModel bath = build_bath(cfg, model.code.n);
  const PreparedSystem sys = prepare(model, bath);
  const GeneratorSnapshot snap = generator_matrix(model, bath, 25.0);
  const TransitionMatrix tm =
      markov_matrix(snap.spectrum, sys.couplings, sys.weights, sys.bath);
  CHECK(tm.w.minCoeff() >= -1e-14);
  CHECK(check_detailed_balance(tm, bath.beta) < 1e-9);
}

TEST_CASE("the balance metric flags a broken ladder") {
  // Hand-built two-level rates: balanced pair scores zero, then break it.
  TransitionMatrix tm;
  tm.energies = {0.0, 1.0};
  tm.w.resize(2, 2);
  const double beta = 1.3, down = 0.2;
  tm.w << 0.0, down, down * std::exp(-beta), 0.0;
  CHECK(check_detailed_balance(tm, beta) < 1e-15);
  tm.w(1, 0) *= 1.05;  // five percent violation, relative metric
  CHECK(check_detailed_balance(tm, beta) ==
        doctest::Approx(0.05 * std::exp(-beta)).epsilon(1e-6));
}

TEST_CASE("forbidden transitions below the floor do not register") {
  TransitionMatrix tm;
  tm.energies = {0.0, 1.0};
  tm.w.resize(2, 2);
  // Pure round-off dust on an exactly forbidden pair.
  tm.w << 0.0, 3e-33, 8e-33, 0.0;
  CHECK(check_detailed_balance(tm, 1.0) < 1e-15);
}

TEST_CASE("Gibbs state closed form on two levels") {
  MatrixXcd h = MatrixXcd::Zero(2, 2);
  h(1, 1) = 2.0;
  const double beta = 0.7;
  const MatrixXcd g = gibbs_state(h, beta);
  const double z = 1.0 + std::exp(-beta * 2.0);
  CHECK(g(0, 0).real() == doctest::Approx(1.0 / z).epsilon(1e-13));
  CHECK(g(1, 1).real() == doctest::Approx(std::exp(-1.4) / z).epsilon(1e-13));
  CHECK(std::abs(g.trace().real() - 1.0) < 1e-13);
}

TEST_CASE("stationary state of a two-level thermal channel") {
  // Decay at rate d, excitation at rate u: stationary populations u : d.
  LindbladOperatorSet ops;
  ops.dim = 2;
  ops.n_sources = 1;
  MatrixXcd down = MatrixXcd::Zero(2, 2), up = MatrixXcd::Zero(2, 2);
  down(0, 1) = 1.0;
  up(1, 0) = 1.0;
  const double d = 0.5, u = 0.2;
  ops.channels.push_back({0, -1.0, d, down});
  ops.channels.push_back({0, 1.0, u, up});
  MatrixXcd h = MatrixXcd::Zero(2, 2);
  h(1, 1) = 1.0;
  const MatrixXcd l = liouvillian_superoperator(h, ops);
  const MatrixXcd pi = stationary_state(l);
  CHECK(pi(0, 0).real() == doctest::Approx(d / (d + u)).epsilon(1e-10));
  CHECK(pi(1, 1).real() == doctest::Approx(u / (d + u)).epsilon(1e-10));
}

TEST_CASE("frozen generator fixes the instantaneous Gibbs state") {
  for (double eta : {2.0, 4.0}) {
    const GeneratorSnapshot snap = default_snapshot(25.0, eta);
    const MatrixXcd pi = stationary_state(snap.superoperator);
    const MatrixXcd g = gibbs_state(snap.hamiltonian, 1.0);
    CHECK(trace_distance(pi, g) < 1e-8);
  }
}

TEST_CASE("trace distance closed form") {
  MatrixXcd a = MatrixXcd::Zero(2, 2), b = MatrixXcd::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace_distance(a, a) == doctest::Approx(0.0));
  b = 0.5 * MatrixXcd::Identity(2, 2);
  CHECK(trace_distance(a, b) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("dissipator validates its input state") {
  LindbladOperatorSet ops;
  ops.dim = 2;
  ops.n_sources = 1;
  MatrixXcd f = MatrixXcd::Zero(2, 2);
  f(0, 1) = 1.0;
  ops.channels.push_back({0, -1.0, 1.0, f});
  MatrixXcd bad = MatrixXcd::Zero(2, 2);
  bad(0, 1) = 1.0;  // not Hermitian, trace zero
  CHECK_THROWS_AS(dissipator_apply(ops, bad), ValidationError);
  CHECK_NOTHROW(dissipator_apply(ops, bad, false));
}

}  // TEST_SUITE
