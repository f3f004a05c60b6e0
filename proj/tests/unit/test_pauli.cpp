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
#include <complex>
#include <random>
#include <string>

#include "pensim/errors.hpp"
#include "pensim/pauli.hpp"

namespace {

using namespace pensim;
using Eigen::MatrixXcd;
using std::complex;

// Independent dense oracle: explicit 2x2 matrices chained with Kronecker
// products, sharing no code with the symplectic implementation under test.
MatrixXcd single(char letter) {
  MatrixXcd m(2, 2);
  const complex<double> i(0.0, 1.0);
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: REQUIRE(false);
  }
  return m;
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatrixXcd dense_oracle(const std::string& letters) {
  MatrixXcd m = single(letters[0]);
  for (std::size_t q = 1; q < letters.size(); ++q) m = kron(m, single(letters[q]));
  return m;
}

std::string random_letters(std::mt19937& rng, int n) {
  static const char alphabet[] = "IXYZ";
  std::uniform_int_distribution<int> pick(0, 3);
  std::string s;
  for (int q = 0; q < n; ++q) s += alphabet[pick(rng)];
  return s;
}

}  // namespace

TEST_SUITE("pauli") {

TEST_CASE("dense form matches the Kronecker oracle") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const std::string s = random_letters(rng, 3);
    const PauliTerm t = PauliTerm::from_string(s);
    CHECK((to_dense(t, 8) - dense_oracle(s)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("string round trip and weight") {
  const PauliTerm t = PauliTerm::from_string("XIZY");
  CHECK(t.to_string() == "XIZY");
  CHECK(t.weight() == 3);
  CHECK(PauliTerm::from_string("IIII").weight() == 0);
  CHECK_THROWS_AS(PauliTerm::from_string("XQ"), ValidationError);
}

TEST_CASE("products carry the algebra's phases") {
  // Every two-qubit pair, checked against plain matrix multiplication.
  for (char a0 : {'I', 'X', 'Y', 'Z'})
    for (char a1 : {'I', 'X', 'Y', 'Z'})
      for (char b0 : {'I', 'X', 'Y', 'Z'})
        for (char b1 : {'I', 'X', 'Y', 'Z'}) {
          const std::string sa{a0, a1}, sb{b0, b1};
          const PauliTerm pa = PauliTerm::from_string(sa);
          const PauliTerm pb = PauliTerm::from_string(sb);
          const MatrixXcd want = dense_oracle(sa) * dense_oracle(sb);
          const MatrixXcd got = to_dense(multiply(pa, pb), 8);
          CHECK((got - want).cwiseAbs().maxCoeff() < 1e-15);
        }
}

TEST_CASE("commutation predicate agrees with the dense commutator") {
  std::mt19937 rng(202);
  for (int trial = 0; trial < 60; ++trial) {
    const std::string sa = random_letters(rng, 4);
    const std::string sb = random_letters(rng, 4);
    const MatrixXcd da = dense_oracle(sa), db = dense_oracle(sb);
    const double comm = (da * db - db * da).cwiseAbs().maxCoeff();
    const bool want = comm < 1e-14;
    CHECK(commutes(PauliTerm::from_string(sa), PauliTerm::from_string(sb)) ==
          want);
  }
}

TEST_CASE("weighted sums parse and assemble densely") {
  const PauliSum s = parse_pauli_sum({"-0.5*ZI", "1.25*XX", "IZ"});
  const MatrixXcd want = -0.5 * dense_oracle("ZI") + 1.25 * dense_oracle("XX") +
                         dense_oracle("IZ");
  CHECK((to_dense(s, 8) - want).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(parse_weighted_pauli("oops*XX"), ValidationError);
}

TEST_CASE("sums merge duplicate terms") {
  PauliSum s(2);
  s.add(0.75, PauliTerm::from_string("XY"));
  s.add(0.25, PauliTerm::from_string("XY"));
  const MatrixXcd want = dense_oracle("XY");
  CHECK((to_dense(s, 8) - want).cwiseAbs().maxCoeff() < 1e-15);
}

}  // TEST_SUITE
