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

#include "pensim/model.hpp"

#include <cmath>
#include <string>

namespace pensim {

namespace {

void check_schedule(const Schedule& schedule) {
  if (schedule.v < 0 || schedule.v > kMaxScheduleOrder) {
    throw ValidationError("schedule order v must be in [0, " +
                          std::to_string(kMaxScheduleOrder) + "], got " +
                          std::to_string(schedule.v));
  }
  if (!(schedule.t_f >= 0.0) || !std::isfinite(schedule.t_f)) {
    throw ValidationError("t_f must be finite and non-negative");
  }
}

void check_parameter(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw ValidationError("schedule parameter " + std::to_string(s) +
                          " outside [0, 1]");
  }
}

// B(v+1, v+1) = (v!)^2 / (2v+1)!. The product accumulates
// v! (v+1)! / (2v+1)!, which still carries a factor (v+1) too much.
double beta_normalization(int v) {
  double b = 1.0;
  for (int i = 1; i <= v; ++i) b *= static_cast<double>(i) / (v + 1 + i);
  return b / (v + 1);
}

// Terms of the model Hamiltonian with their endpoint coefficients.
struct TermList {
  std::vector<PauliTerm> ops;
  std::vector<double> c_init, c_final;

  void push(double ci, double cf, const PauliTerm& op, double sign = 1.0) {
    if (ci == 0.0 && cf == 0.0) return;
    ops.push_back(op.canonical());
    c_init.push_back(ci * sign);
    c_final.push_back(cf * sign);
  }
};

TermList collect_terms(const Model& model) {
  const int k = model.code.k;
  validate_problem(model.problem, k);
  TermList list;
  const auto& p = model.problem;
  for (int i = 0; i < k; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    list.push(p.h_x_init(i), p.h_x_final(i), model.code.logical_x[ui]);
    list.push(p.h_z_init(i), p.h_z_final(i), model.code.logical_z[ui]);
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      if (p.j_x_init(i, j) != 0.0 || p.j_x_final(i, j) != 0.0) {
        const PauliTerm prod =
            multiply(model.code.logical_x[ui], model.code.logical_x[uj]);
        list.push(p.j_x_init(i, j), p.j_x_final(i, j), prod,
                  prod.phase().real());
      }
      if (p.j_z_init(i, j) != 0.0 || p.j_z_final(i, j) != 0.0) {
        const PauliTerm prod =
            multiply(model.code.logical_z[ui], model.code.logical_z[uj]);
        list.push(p.j_z_init(i, j), p.j_z_final(i, j), prod,
                  prod.phase().real());
      }
    }
  }
  return list;
}

}  // namespace

double ramp(const Schedule& schedule, double s) {
  check_schedule(schedule);
  check_parameter(s);
  const int v = schedule.v;
  if (v == 0) return s;
  // Binomial-tail form of I_s(v+1, v+1):
  //   sum_{j=v+1}^{2v+1} C(2v+1, j) s^j (1-s)^{2v+1-j}.
  // Every term is nonnegative, so this stays stable over the whole
  // supported order range; expanding the integral of u^v (1-u)^v instead
  // gives an alternating sum that cancels catastrophically by v ~ 15.
  const int n = 2 * v + 1;
  double binom = 1.0;  // C(n, v+1) = prod_{i=1}^{v} (v+1+i) / i
  for (int i = 1; i <= v; ++i) binom *= static_cast<double>(v + 1 + i) / i;
  double acc = 0.0;
  for (int j = v + 1; j <= n; ++j) {
    acc += binom * std::pow(s, j) * std::pow(1.0 - s, n - j);
    binom = binom * (n - j) / (j + 1);
  }
  return acc;
}

double ramp_derivative(const Schedule& schedule, double s) {
  check_schedule(schedule);
  check_parameter(s);
  const int v = schedule.v;
  if (v == 0) return 1.0;
  return std::pow(s * (1.0 - s), v) / beta_normalization(v);
}

double schedule_parameter(const Schedule& schedule, double t) {
  check_schedule(schedule);
  if (schedule.t_f == 0.0) {
    if (t != 0.0) throw ValidationError("frozen schedule admits only t = 0");
    return 0.0;
  }
  const double s = t / schedule.t_f;
  if (!(s >= 0.0 && s <= 1.0)) {
    throw ValidationError("time " + std::to_string(t) + " outside [0, " +
                          std::to_string(schedule.t_f) + "]");
  }
  return s;
}

LogicalProblem LogicalProblem::zero(int k) {
  LogicalProblem p;
  p.h_x_init = p.h_x_final = p.h_z_init = p.h_z_final =
      Eigen::VectorXd::Zero(k);
  p.j_x_init = p.j_x_final = p.j_z_init = p.j_z_final =
      Eigen::MatrixXd::Zero(k, k);
  return p;
}

void validate_problem(const LogicalProblem& problem, int k) {
  auto check_vec = [k](const Eigen::VectorXd& v, const char* name) {
    if (v.size() != k) {
      throw ValidationError(std::string(name) + " has length " +
                            std::to_string(v.size()) + ", expected " +
                            std::to_string(k));
    }
    if (!v.allFinite()) {
      throw ValidationError(std::string(name) + " contains non-finite values");
    }
  };
  auto check_mat = [k](const Eigen::MatrixXd& m, const char* name) {
    if (m.rows() != k || m.cols() != k) {
      throw ValidationError(std::string(name) + " must be " +
                            std::to_string(k) + "x" + std::to_string(k));
    }
    if (!m.allFinite()) {
      throw ValidationError(std::string(name) + " contains non-finite values");
    }
    for (int i = 0; i < k; ++i) {
      if (m(i, i) != 0.0) {
        throw ValidationError(std::string(name) +
                              " must have a zero diagonal");
      }
      for (int j = 0; j < i; ++j) {
        if (m(i, j) != m(j, i)) {
          throw ValidationError(std::string(name) + " must be symmetric");
        }
      }
    }
  };
  check_vec(problem.h_x_init, "h_x_init");
  check_vec(problem.h_x_final, "h_x_final");
  check_vec(problem.h_z_init, "h_z_init");
  check_vec(problem.h_z_final, "h_z_final");
  check_mat(problem.j_x_init, "j_x_init");
  check_mat(problem.j_x_final, "j_x_final");
  check_mat(problem.j_z_init, "j_z_init");
  check_mat(problem.j_z_final, "j_z_final");
}

PauliSum system_hamiltonian(const Model& model, double t) {
  const TermList list = collect_terms(model);
  const double r = ramp(model.schedule, schedule_parameter(model.schedule, t));
  PauliSum h(model.code.n);
  for (std::size_t i = 0; i < list.ops.size(); ++i) {
    h.add(list.c_init[i] + (list.c_final[i] - list.c_init[i]) * r,
          list.ops[i]);
  }
  return h;
}

void DenseModel::hamiltonian(double t, Eigen::MatrixXcd& h,
                             Eigen::MatrixXcd* h_dot) const {
  const double s = schedule_parameter(schedule, t);
  const double r = ramp(schedule, s);
  h = eta_p * penalty;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    h += (c_init(idx) + (c_final(idx) - c_init(idx)) * r) * terms[i];
  }
  if (h_dot != nullptr) {
    h_dot->setZero(dim, dim);
    if (schedule.t_f > 0.0) {
      const double rd = ramp_derivative(schedule, s) / schedule.t_f;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        *h_dot += (c_final(idx) - c_init(idx)) * rd * terms[i];
      }
    }
  }
}

DenseModel assemble_dense(const Model& model, int max_qubits) {
  check_schedule(model.schedule);
  if (!std::isfinite(model.eta_p) || model.eta_p < 0.0) {
    throw ValidationError("penalty strength eta_p must be >= 0");
  }
  DenseModel dense;
  dense.dim = 1 << model.code.n;  // codespace_projector enforces the cap
  dense.schedule = model.schedule;
  dense.eta_p = model.eta_p;
  dense.codespace = codespace_projector(model.code, max_qubits);
  dense.penalty = to_dense(penalty_hamiltonian(model.code), max_qubits);
  const TermList list = collect_terms(model);
  dense.c_init = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(list.ops.size()));
  dense.c_final = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(list.ops.size()));
  for (std::size_t i = 0; i < list.ops.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    dense.terms.push_back(to_dense(list.ops[i], max_qubits));
    dense.c_init(idx) = list.c_init[i];
    dense.c_final(idx) = list.c_final[i];
  }
  return dense;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> total_hamiltonian(
    const Model& model, double t) {
  const DenseModel dense = assemble_dense(model);
  Eigen::MatrixXcd h, h_dot;
  dense.hamiltonian(t, h, &h_dot);
  return {h, h_dot};
}

}  // namespace pensim
