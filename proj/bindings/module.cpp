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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "pensim/bath.hpp"
#include "pensim/bounds.hpp"
#include "pensim/codes.hpp"
#include "pensim/config.hpp"
#include "pensim/davies.hpp"
#include "pensim/errors.hpp"
#include "pensim/propagate.hpp"
#include "pensim/runner.hpp"
#include "pensim/verify.hpp"

namespace py = pybind11;

namespace {

py::dict report_dict(const pensim::BoundReport& r) {
  py::dict d;
  d["eta_p"] = r.eta_p;
  d["beta"] = r.beta;
  d["t_f"] = r.t_f;
  d["penalty_gap"] = r.penalty_gap;
  d["gamma_max"] = r.gamma_max;
  d["sum_m_tilde"] = r.sum_m_tilde;
  d["sum_F_norms"] = r.sum_f_norms;
  d["q_measured"] = r.q_measured;
  d["q_structural"] = r.q_structural;
  d["bound_value"] = r.bound_value;
  d["bound_relaxed"] = r.bound_relaxed;
  d["p_perp_measured"] = r.p_perp_measured;
  d["p_perp_max"] = r.p_perp_max;
  d["coherence_late"] = r.coherence_late;
  d["min_gap"] = r.min_gap;
  d["min_excitation_energy"] = r.min_excitation_energy;
  return d;
}

py::dict trajectory_dict(const pensim::Trajectory& traj) {
  const auto n = static_cast<py::ssize_t>(traj.points.size());
  py::dict d;
  const auto column = [&](const char* name, auto getter) {
    py::list values(n);
    for (py::ssize_t i = 0; i < n; ++i) {
      values[i] = getter(traj.points[static_cast<std::size_t>(i)]);
    }
    d[name] = std::move(values);
  };
  column("t", [](const auto& p) { return p.t; });
  column("p_perp", [](const auto& p) { return p.p_perp; });
  column("rate_total", [](const auto& p) { return p.rate_total; });
  column("rate_diag", [](const auto& p) { return p.rate_diag; });
  column("rate_offdiag", [](const auto& p) { return p.rate_offdiag; });
  column("coherence_norm", [](const auto& p) { return p.coherence_norm; });
  column("codespace_leakage",
         [](const auto& p) { return p.codespace_leakage; });
  column("trace_error", [](const auto& p) { return p.trace_error; });
  column("min_eig", [](const auto& p) { return p.min_eig; });
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Davies-Lindblad simulation of penalty-protected adiabatic dynamics "
      "on stabilizer codes";

  py::register_exception<pensim::ConfigError>(m, "ConfigError",
                                              PyExc_ValueError);
  py::register_exception<pensim::ValidationError>(m, "ValidationError",
                                                  PyExc_ValueError);
  py::register_exception<pensim::ResourceError>(m, "ResourceError",
                                                PyExc_RuntimeError);
  py::register_exception<pensim::NumericError>(m, "NumericError",
                                               PyExc_RuntimeError);

  py::class_<pensim::StabilizerCode>(m, "StabilizerCode")
      .def_readonly("n", &pensim::StabilizerCode::n)
      .def_readonly("k", &pensim::StabilizerCode::k)
      .def_readonly("d", &pensim::StabilizerCode::d);

  m.def("build_code", &pensim::build_code, py::arg("preset"),
        "Stabilizer code for a named preset (e.g. '422').");
  m.def("penalty_gap", &pensim::penalty_gap, py::arg("code"),
        "Spectral gap g of the penalty Hamiltonian at unit strength.");

  py::class_<pensim::RunConfig>(m, "RunConfig")
      .def_readwrite("eta_p", &pensim::RunConfig::eta_p)
      .def_readwrite("beta", &pensim::RunConfig::beta)
      .def_readwrite("omega_c", &pensim::RunConfig::omega_c)
      .def_readwrite("kappa", &pensim::RunConfig::kappa)
      .def_readwrite("grid", &pensim::RunConfig::grid)
      .def_readwrite("late_window", &pensim::RunConfig::late_window)
      .def_readwrite("output_dir", &pensim::RunConfig::output_dir)
      .def_property(
          "t_f",
          [](const pensim::RunConfig& c) { return c.schedule.t_f; },
          [](pensim::RunConfig& c, double v) { c.schedule.t_f = v; })
      .def_property(
          "v", [](const pensim::RunConfig& c) { return c.schedule.v; },
          [](pensim::RunConfig& c, int v) { c.schedule.v = v; });

  m.def("default_config", &pensim::default_config,
        "Built-in two-logical-qubit problem on the 422 code.");
  m.def("parse_config", &pensim::parse_config, py::arg("json_text"));
  m.def("load_config", &pensim::load_config, py::arg("path"));

  m.def(
      "spectral_rate",
      [](double beta, double omega_c, double kappa, double omega) {
        pensim::BathModel bath;
        bath.beta = beta;
        bath.omega_c = omega_c;
        bath.kappa = kappa;
        return pensim::gamma(bath, omega);
      },
      py::arg("beta"), py::arg("omega_c"), py::arg("kappa"),
      py::arg("omega"),
      "Ohmic bath rate gamma(omega) with exponential cutoff.");

  m.def(
      "run",
      [](const pensim::RunConfig& config) {
        const pensim::RunResult result = pensim::run_single(config);
        py::dict d;
        d["trajectory"] = trajectory_dict(result.trajectory);
        d["report"] = report_dict(result.report);
        return d;
      },
      py::arg("config"),
      "Evolve one configuration; returns trajectory columns and the bound "
      "report.");

  m.def(
      "sweep",
      [](const pensim::RunConfig& config, const std::string& axis,
         const std::vector<double>& values) {
        const pensim::SweepResult result =
            pensim::run_sweep(config, pensim::parse_axis(axis), values);
        py::list points;
        for (const pensim::SweepPoint& p : result.points) {
          py::dict row;
          row["value"] = p.value;
          row["report"] = report_dict(p.report);
          row["closed_p_perp"] = p.closed_p_perp;
          points.append(std::move(row));
        }
        py::dict d;
        d["points"] = std::move(points);
        if (result.has_fit) {
          py::dict fit;
          fit["slope"] = result.fit.slope;
          fit["intercept"] = result.fit.intercept;
          fit["r_squared"] = result.fit.r_squared;
          d["fit"] = std::move(fit);
        } else {
          d["fit"] = py::none();
        }
        return d;
      },
      py::arg("config"), py::arg("axis"), py::arg("values"),
      "Sweep eta_p, t_f, or v; returns per-point bound reports and the fit.");

  m.def(
      "verify",
      [](const pensim::RunConfig& config, const std::string& mutate) {
        const pensim::VerifyMutation mutation =
            mutate == "kms_sign_flip"
                ? pensim::VerifyMutation::kms_sign_flip
                : pensim::VerifyMutation::none;
        const pensim::VerifyReport report =
            pensim::verify_suite(config, mutation);
        py::list checks;
        for (const pensim::VerifyCheck& c : report.checks) {
          py::dict row;
          row["name"] = c.name;
          row["passed"] = c.passed;
          row["violation"] = c.violation;
          row["tolerance"] = c.tolerance;
          checks.append(std::move(row));
        }
        return checks;
      },
      py::arg("config"), py::arg("mutate") = "none",
      "Run the invariant battery; returns one dict per check.");
}
