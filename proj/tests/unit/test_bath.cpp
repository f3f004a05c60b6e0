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

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "pensim/bath.hpp"
#include "pensim/errors.hpp"

namespace {
using namespace pensim;
}  // namespace

TEST_SUITE("bath") {

TEST_CASE("spectral rate closed forms") {
  BathModel bath;  // beta = 1, omega_c = 8, kappa = 1e-3
  const double two_pi = 2.0 * std::numbers::pi;

  SUBCASE("zero-frequency limit is 2 pi kappa / beta") {
    CHECK(gamma(bath, 0.0) ==
          doctest::Approx(two_pi * bath.kappa / bath.beta).epsilon(1e-14));
    // Continuity: tiny positive and negative frequencies straddle it.
    CHECK(gamma(bath, 1e-9) == doctest::Approx(gamma(bath, 0.0)).epsilon(1e-6));
    CHECK(gamma(bath, -1e-9) == doctest::Approx(gamma(bath, 0.0)).epsilon(1e-6));
  }

  SUBCASE("hand-evaluated point") {
    // gamma(1) = 2 pi kappa e^{-1/8} / (1 - e^{-1}).
    const double want =
        two_pi * bath.kappa * std::exp(-0.125) / (1.0 - std::exp(-1.0));
    CHECK(gamma(bath, 1.0) == doctest::Approx(want).epsilon(1e-14));
  }

  SUBCASE("thermal ratio holds over a frequency sweep") {
    for (double w : {0.1, 0.5, 1.0, 2.0, 5.0, 9.0}) {
      CHECK(gamma(bath, -w) ==
            doctest::Approx(std::exp(-bath.beta * w) * gamma(bath, w))
                .epsilon(1e-12));
    }
  }

  SUBCASE("cutoff tames high frequencies") {
    CHECK(gamma(bath, 80.0) < gamma(bath, 8.0));
    CHECK(gamma(bath, 300.0) < 1e-12);
  }

  SUBCASE("rates are nonnegative everywhere") {
    for (double w = -20.0; w <= 20.0; w += 0.25) CHECK(gamma(bath, w) >= 0.0);
  }
}

TEST_CASE("coupling preset attaches X and Z probes to every qubit") {
  const auto couplings = coupling_preset("x_and_z_all_qubits", 4);
  REQUIRE(couplings.size() == 8);
  std::set<std::string> seen;
  for (const auto& c : couplings) {
    CHECK(c.op.weight() == 1);
    CHECK(c.profile == "ohmic");
    seen.insert(c.op.to_string());
  }
  CHECK(seen.size() == 8);  // all distinct single-site probes
  CHECK_THROWS_AS(coupling_preset("bogus", 4), ValidationError);
}

TEST_CASE("bath validation guards physical parameters") {
  BathModel bath;
  bath.couplings = coupling_preset("x_and_z_all_qubits", 2);
  CHECK_NOTHROW(validate_bath(bath, 2));
  SUBCASE("temperature") {
    bath.beta = 0.0;
    CHECK_THROWS_AS(validate_bath(bath, 2), ValidationError);
  }
  SUBCASE("cutoff") {
    bath.omega_c = -1.0;
    CHECK_THROWS_AS(validate_bath(bath, 2), ValidationError);
  }
  SUBCASE("coupling strength may be zero but not negative") {
    bath.kappa = 0.0;
    CHECK_NOTHROW(validate_bath(bath, 2));
    bath.kappa = -1e-3;
    CHECK_THROWS_AS(validate_bath(bath, 2), ValidationError);
  }
  SUBCASE("correlation matrix dimensions must match the channels") {
    bath.correlation = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(validate_bath(bath, 2), ValidationError);
  }
}

TEST_CASE("channel correlations rotate into independent damping weights") {
  BathModel bath;
  bath.couplings = coupling_preset("x_and_z_all_qubits", 1);  // X_0, Z_0
  REQUIRE(bath.couplings.size() == 2);

  SUBCASE("identity correlation keeps the bare channels") {
    const DiagonalizedCouplings diag = diagonalize_rate_matrix(bath);
    REQUIRE(diag.ops.size() == 2);
    for (double w : diag.weights) CHECK(w == doctest::Approx(1.0));
  }

  SUBCASE("a symmetric cross term splits the weights") {
    bath.correlation.resize(2, 2);
    bath.correlation << 1.0, 0.5, 0.5, 1.0;
    const DiagonalizedCouplings diag = diagonalize_rate_matrix(bath);
    REQUIRE(diag.weights.size() == 2);
    const double lo = std::min(diag.weights[0], diag.weights[1]);
    const double hi = std::max(diag.weights[0], diag.weights[1]);
    CHECK(lo == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(hi == doctest::Approx(1.5).epsilon(1e-12));
  }

  SUBCASE("an indefinite correlation matrix is rejected") {
    bath.correlation.resize(2, 2);
    bath.correlation << 1.0, 2.0, 2.0, 1.0;  // eigenvalues -1 and 3
    CHECK_THROWS_AS(diagonalize_rate_matrix(bath), ValidationError);
  }
}

}  // TEST_SUITE
