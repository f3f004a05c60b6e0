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

#include "pensim/codes.hpp"
#include "pensim/config.hpp"
#include "pensim/errors.hpp"
#include "pensim/model.hpp"
#include "pensim/pauli.hpp"

namespace {
using namespace pensim;
using Eigen::MatrixXcd;
}  // namespace

TEST_SUITE("model") {

TEST_CASE("ramp hits its endpoints and stays monotone") {
  for (int v : {0, 1, 2, 5, 20}) {
    const Schedule sched{v, 10.0};
    CHECK(ramp(sched, 0.0) == 0.0);
    CHECK(ramp(sched, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ramp(sched, 0.5) == doctest::Approx(0.5).epsilon(1e-13));
    double prev = 0.0;
    for (int i = 1; i <= 50; ++i) {
      const double r = ramp(sched, i / 50.0);
      CHECK(r >= prev - 1e-15);
      prev = r;
    }
  }
}

TEST_CASE("low orders match their closed forms") {
  const Schedule lin{0, 1.0}, cubic{1, 1.0}, quintic{2, 1.0};
  for (int i = 0; i <= 20; ++i) {
    const double s = i / 20.0;
    CHECK(ramp(lin, s) == doctest::Approx(s).epsilon(1e-14));
    CHECK(ramp(cubic, s) ==
          doctest::Approx(3 * s * s - 2 * s * s * s).epsilon(1e-13));
    const double q = s * s * s * (10 - 15 * s + 6 * s * s);
    CHECK(ramp(quintic, s) == doctest::Approx(q).epsilon(1e-13));
  }
}

TEST_CASE("ramp derivative agrees with finite differences and flattens at the ends") {
  for (int v : {1, 2, 4}) {
    const Schedule sched{v, 1.0};
    for (int i = 1; i < 10; ++i) {
      const double s = i / 10.0, h = 1e-6;
      const double fd = (ramp(sched, s + h) - ramp(sched, s - h)) / (2 * h);
      CHECK(ramp_derivative(sched, s) == doctest::Approx(fd).epsilon(1e-7));
    }
    CHECK(ramp_derivative(sched, 0.0) == 0.0);
    CHECK(ramp_derivative(sched, 1.0) == 0.0);
    // v vanishing derivatives at the boundary: the ramp lifts off like
    // s^{v+1} with a leading coefficient between 1 and 4^{v+1}.
    const double eps = 1e-3;
    const double lift = ramp(sched, eps);
    CHECK(lift < std::pow(4.0 * eps, v + 1.0));
    CHECK(lift > 0.1 * std::pow(eps, v + 1.0));
  }
}

TEST_CASE("the schedule dial rejects times outside the anneal") {
  const Schedule frozen{1, 0.0};
  CHECK(schedule_parameter(frozen, 0.0) == 0.0);
  CHECK_THROWS_AS(schedule_parameter(frozen, 5.0), ValidationError);
  const Schedule sched{1, 10.0};
  CHECK(schedule_parameter(sched, 2.5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(schedule_parameter(sched, 12.0), ValidationError);
  CHECK_THROWS_AS(schedule_parameter(sched, -0.1), ValidationError);
}

TEST_CASE("total Hamiltonian interpolates the logical problem over the penalty") {
  const RunConfig cfg = default_config();
  const Model model{build_config_code(cfg), cfg.problem, cfg.schedule,
                    cfg.eta_p};
  const MatrixXcd hp = to_dense(penalty_hamiltonian(model.code));
  const MatrixXcd lx0 = to_dense(model.code.logical_x[0]);
  const MatrixXcd lx1 = to_dense(model.code.logical_x[1]);
  const MatrixXcd lz0 = to_dense(model.code.logical_z[0]);
  const MatrixXcd lz1 = to_dense(model.code.logical_z[1]);

  SUBCASE("start: penalty plus the transverse logical field") {
    const MatrixXcd h = total_hamiltonian(model, 0.0).first;
    const MatrixXcd want = cfg.eta_p * hp - lx0 - lx1;
    CHECK((h - want).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("end: penalty plus the final longitudinal problem") {
    const MatrixXcd h = total_hamiltonian(model, cfg.schedule.t_f).first;
    const MatrixXcd want = cfg.eta_p * hp - 0.5 * lz0 - lz0 * lz1;
    CHECK((h - want).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("analytic time derivative matches central differences") {
    for (double t : {7.0, 25.0, 40.5}) {
      const double h = 1e-5;
      const MatrixXcd lo = total_hamiltonian(model, t - h).first;
      const MatrixXcd hi = total_hamiltonian(model, t + h).first;
      const MatrixXcd dc = total_hamiltonian(model, t).second;
      const MatrixXcd fd = (hi - lo) / (2 * h);
      CHECK((dc - fd).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("vanishing couplings are dropped from the Pauli assembly") {
  const RunConfig cfg = default_config();
  const Model model{build_config_code(cfg), cfg.problem, cfg.schedule,
                    cfg.eta_p};
  // The desk problem uses h_x on both qubits, h_z on the first, and one
  // ZZ coupling: four live logical terms at interior times.
  const PauliSum sum = system_hamiltonian(model, 25.0);
  CHECK(sum.size() == 4);
}

TEST_CASE("problem validation rejects mismatched dimensions") {
  LogicalProblem p = LogicalProblem::zero(2);
  p.h_x_init.resize(3);
  p.h_x_init.setZero();
  CHECK_THROWS_AS(validate_problem(p, 2), ValidationError);
}

}  // TEST_SUITE
