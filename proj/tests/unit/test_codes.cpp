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
#include <algorithm>
#include <map>

#include "pensim/codes.hpp"
#include "pensim/errors.hpp"
#include "pensim/pauli.hpp"

namespace {
using namespace pensim;
using Eigen::MatrixXcd;
}  // namespace

TEST_SUITE("codes") {

TEST_CASE("the 422 preset is a commuting [[4,2,2]] stabilizer code") {
  const StabilizerCode code = build_code("422");
  CHECK(code.n == 4);
  CHECK(code.k == 2);
  CHECK(code.d == 2);
  REQUIRE(code.generators.size() == 2);
  REQUIRE(code.logical_x.size() == 2);
  REQUIRE(code.logical_z.size() == 2);
  for (const auto& a : code.generators)
    for (const auto& b : code.generators) CHECK(commutes(a, b));
  // Logical operators preserve the codespace and pair up symplectically.
  for (std::size_t i = 0; i < code.logical_x.size(); ++i) {
    for (const auto& g : code.generators) {
      CHECK(commutes(code.logical_x[i], g));
      CHECK(commutes(code.logical_z[i], g));
    }
    for (std::size_t j = 0; j < code.logical_z.size(); ++j) {
      CHECK(commutes(code.logical_x[i], code.logical_z[j]) == (i != j));
    }
  }
  CHECK_THROWS_AS(build_code("999"), ValidationError);
}

TEST_CASE("codespace projector selects the joint +1 eigenspace") {
  const StabilizerCode code = build_code("422");
  const MatrixXcd p = codespace_projector(code);
  CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(std::abs(p.trace().real() - 4.0) < 1e-12);  // dim = 2^k
  for (const auto& g : code.generators) {
    const MatrixXcd s = to_dense(g);
    CHECK((s * p - p).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("penalty spectrum is the equally spaced syndrome ladder") {
  const StabilizerCode code = build_code("422");
  CHECK(penalty_gap(code) == doctest::Approx(2.0).epsilon(1e-14));
  const PenaltySpectrum ps = penalty_spectrum(code);
  REQUIRE(ps.levels.size() == 3);
  CHECK(ps.levels[0].shift == doctest::Approx(-2.0));
  CHECK(ps.levels[1].shift == doctest::Approx(0.0));
  CHECK(ps.levels[2].shift == doctest::Approx(2.0));

  // Dense check: -sum_i S_i has eigenvalues -2, 0, 2 with multiplicities
  // 4, 8, 4 on the sixteen-dimensional physical space.
  const MatrixXcd hp = to_dense(penalty_hamiltonian(code));
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hp, Eigen::EigenvaluesOnly);
  std::map<int, int> mult;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double e = es.eigenvalues()(i);
    CHECK(std::abs(e - std::round(e)) < 1e-12);
    ++mult[static_cast<int>(std::round(e))];
  }
  CHECK(mult[-2] == 4);
  CHECK(mult[0] == 8);
  CHECK(mult[2] == 4);
}

TEST_CASE("weight-one errors are detected, some weight-two are not") {
  const StabilizerCode code = build_code("422");
  CHECK(verify_detection(code, 1).empty());
  const auto violations = verify_detection(code, 2);
  REQUIRE(!violations.empty());
  for (const auto& v : violations) CHECK(v.op.weight() == 2);
  const double worst =
      std::max_element(violations.begin(), violations.end(),
                       [](const auto& a, const auto& b) { return a.norm < b.norm; })
          ->norm;
  CHECK(worst > 0.5);
}

TEST_CASE("padding adds stabilized spectator qubits") {
  const StabilizerCode base = build_code("422");
  const StabilizerCode padded = pad_code(base, 2);
  CHECK(padded.n == 6);
  CHECK(padded.k == 2);
  CHECK(padded.generators.size() == 4);
  CHECK(std::abs(codespace_projector(padded).trace().real() - 4.0) < 1e-12);
  // A pad qubit is stabilized by its own Z, so Z there acts as the identity
  // on the codespace; every other weight-one Pauli is still detected.
  for (const auto& v : verify_detection(padded, 1)) {
    CHECK(v.op.to_string().substr(0, base.n) == "IIII");
    CHECK(v.op.to_string().find_first_of("XY") == std::string::npos);
    CHECK(v.norm == doctest::Approx(1.0));
  }
  CHECK(penalty_gap(padded) == doctest::Approx(2.0));
  CHECK_THROWS_AS(pad_code(base, -1), ValidationError);
}

TEST_CASE("make_code rejects malformed inputs") {
  // A logical X that anticommutes with a generator is not a logical operator.
  CHECK_THROWS_AS(make_code(2, 1, 1, {PauliTerm::from_string("ZZ")},
                            {PauliTerm::from_string("XI")},
                            {PauliTerm::from_string("ZI")}),
                  ValidationError);
}

}  // TEST_SUITE
