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

#include "pensim/errors.hpp"
#include "pensim/spectral.hpp"

namespace {

using namespace pensim;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

MatrixXcd random_hermitian(std::mt19937& rng, int dim) {
  std::normal_distribution<double> g;
  MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = std::complex<double>(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("eigendecomposition reconstructs the operator") {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXcd h = random_hermitian(rng, 12);
    const SpectralData spec = eigendecompose(h);
    const MatrixXcd rebuilt = spec.basis *
                              spec.eigenvalues.asDiagonal() *
                              spec.basis.adjoint();
    CHECK((rebuilt - h).cwiseAbs().maxCoeff() < 1e-12);
    for (int i = 1; i < spec.eigenvalues.size(); ++i)
      CHECK(spec.eigenvalues(i) >= spec.eigenvalues(i - 1));
    // Projectors resolve the identity and are orthogonal.
    MatrixXcd sum = MatrixXcd::Zero(12, 12);
    for (const auto& c : spec.clusters) sum += c.projector;
    CHECK((sum - MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("exact degeneracies merge into one cluster") {
  MatrixXcd h = MatrixXcd::Zero(4, 4);
  h(2, 2) = 1.0;
  h(3, 3) = 3.0;
  const SpectralData spec = eigendecompose(h);
  REQUIRE(spec.clusters.size() == 3);
  CHECK(spec.ground().multiplicity == 2);
  CHECK(spec.ground().energy == doctest::Approx(0.0));
  CHECK(spec.gap == doctest::Approx(1.0));
  CHECK(std::abs(spec.ground_projector().trace().real() - 2.0) < 1e-13);
}

TEST_CASE("near-degeneracies below the relative tolerance also merge") {
  MatrixXcd h = MatrixXcd::Zero(3, 3);
  h(1, 1) = 1e-12;  // within kClusterTolRel of the span
  h(2, 2) = 1.0;
  const SpectralData spec = eigendecompose(h);
  CHECK(spec.clusters.size() == 2);
  CHECK(spec.ground().multiplicity == 2);
}

TEST_CASE("Bohr frequencies enumerate signed level differences") {
  MatrixXcd h = MatrixXcd::Zero(3, 3);
  h(1, 1) = 1.0;
  h(2, 2) = 3.0;
  const SpectralData spec = eigendecompose(h);
  const std::vector<double> want{-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
  const std::vector<double> got = bohr_frequencies(spec);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-13));
}

TEST_CASE("reduced resolvent inverts off the ground cluster") {
  std::mt19937 rng(44);
  const MatrixXcd h = random_hermitian(rng, 8);
  const SpectralData spec = eigendecompose(h);
  const MatrixXcd s = reduced_resolvent(spec);
  const MatrixXcd p0 = spec.ground_projector();
  const MatrixXcd q = MatrixXcd::Identity(8, 8) - p0;
  CHECK((s * p0).cwiseAbs().maxCoeff() < 1e-12);
  const double e0 = spec.ground().energy;
  const MatrixXcd shifted = h - e0 * MatrixXcd::Identity(8, 8);
  CHECK((s * shifted - q).cwiseAbs().maxCoeff() < 1e-11);
  // Operator norm of the resolvent is the inverse gap.
  Eigen::JacobiSVD<MatrixXcd> svd(s);
  CHECK(svd.singularValues()(0) == doctest::Approx(1.0 / spec.gap).epsilon(1e-10));
}

TEST_CASE("ground projector derivative tracks a rotating eigenvector") {
  // Single qubit rotating in the X-Z plane: P_0(theta) is known in closed
  // form, so compare the formula against finite differences of theta.
  auto hamiltonian = [](double theta) {
    MatrixXcd h(2, 2);
    h << std::cos(theta), std::sin(theta), std::sin(theta), -std::cos(theta);
    return h;
  };
  const double theta = 0.7, dt = 1e-6;
  const SpectralData spec = eigendecompose(hamiltonian(theta));
  MatrixXcd hdot(2, 2);
  hdot << -std::sin(theta), std::cos(theta), std::cos(theta), std::sin(theta);
  const MatrixXcd got = ground_projector_derivative(spec, hdot);
  const MatrixXcd pm = eigendecompose(hamiltonian(theta - dt)).ground_projector();
  const MatrixXcd pp = eigendecompose(hamiltonian(theta + dt)).ground_projector();
  const MatrixXcd fd = (pp - pm) / (2 * dt);
  CHECK((got - fd).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("minimum gap finds an avoided crossing") {
  // H(t) = (1 - t) X + t Z on one qubit: gap(t) = 2 sqrt((1-t)^2 + t^2),
  // minimized at t = 1/2 with value sqrt(2).
  auto hamiltonian = [](double t) {
    MatrixXcd h(2, 2);
    h << t, 1.0 - t, 1.0 - t, -t;
    return h;
  };
  const MinimumGap mg = minimum_gap(hamiltonian, 0.0, 1.0);
  CHECK(mg.gap == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(mg.t_star == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("level crossings are reported rather than clustered over") {
  auto hamiltonian = [](double t) {
    MatrixXcd h(2, 2);
    h << 1.0 - 2.0 * t, 0.0, 0.0, 2.0 * t - 1.0;
    return h;
  };
  CHECK_THROWS_AS(minimum_gap(hamiltonian, 0.0, 1.0), NumericError);
}

}  // TEST_SUITE
