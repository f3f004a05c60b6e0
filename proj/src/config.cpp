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

#include "pensim/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"

#include "pensim/errors.hpp"

namespace pensim {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& path, const std::string& why) {
  throw ConfigError("config key '" + path + "' " + why);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (item.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown config key '" + join(path, item.key()) + "'");
    }
  }
}

const json* find(const json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void read_double(const json& j, const std::string& path, const char* key,
                 double& out) {
  if (const json* v = find(j, key)) {
    if (!v->is_number()) bad_key(join(path, key), "must be a number");
    out = v->get<double>();
    if (!std::isfinite(out)) bad_key(join(path, key), "must be finite");
  }
}

void read_int(const json& j, const std::string& path, const char* key,
              long& out) {
  if (const json* v = find(j, key)) {
    if (!v->is_number_integer()) bad_key(join(path, key), "must be an integer");
    out = v->get<long>();
  }
}

void read_bool(const json& j, const std::string& path, const char* key,
               bool& out) {
  if (const json* v = find(j, key)) {
    if (!v->is_boolean()) bad_key(join(path, key), "must be a boolean");
    out = v->get<bool>();
  }
}

void read_string(const json& j, const std::string& path, const char* key,
                 std::string& out) {
  if (const json* v = find(j, key)) {
    if (!v->is_string()) bad_key(join(path, key), "must be a string");
    out = v->get<std::string>();
  }
}

void read_vector(const json& j, const std::string& path, const char* key,
                 Eigen::VectorXd& out, Eigen::Index expected) {
  if (const json* v = find(j, key)) {
    if (!v->is_array() || static_cast<Eigen::Index>(v->size()) != expected) {
      bad_key(join(path, key),
              "must be an array of " + std::to_string(expected) + " numbers");
    }
    out.resize(expected);
    for (Eigen::Index i = 0; i < expected; ++i) {
      const json& e = (*v)[static_cast<std::size_t>(i)];
      if (!e.is_number()) {
        bad_key(join(path, key), "must contain only numbers");
      }
      out(i) = e.get<double>();
    }
  }
}

void read_string_array(const json& j, const std::string& path, const char* key,
                       std::vector<std::string>& out) {
  if (const json* v = find(j, key)) {
    if (!v->is_array() || v->empty()) {
      bad_key(join(path, key), "must be a non-empty array of strings");
    }
    out.clear();
    out.reserve(v->size());
    for (const json& e : *v) {
      if (!e.is_string()) {
        bad_key(join(path, key), "must contain only strings");
      }
      out.push_back(e.get<std::string>());
    }
  }
}

void read_matrix(const json& j, const std::string& path, const char* key,
                 Eigen::MatrixXd& out, Eigen::Index rows, Eigen::Index cols) {
  if (const json* v = find(j, key)) {
    if (!v->is_array() || static_cast<Eigen::Index>(v->size()) != rows) {
      bad_key(join(path, key),
              "must be an array of " + std::to_string(rows) + " rows");
    }
    out.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const json& row = (*v)[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
        bad_key(join(path, key), "row " + std::to_string(r) + " must hold " +
                                     std::to_string(cols) + " numbers");
      }
      for (Eigen::Index c = 0; c < cols; ++c) {
        const json& e = row[static_cast<std::size_t>(c)];
        if (!e.is_number()) {
          bad_key(join(path, key), "must contain only numbers");
        }
        out(r, c) = e.get<double>();
      }
    }
  }
}

void require(bool ok, const std::string& path, const std::string& why) {
  if (!ok) bad_key(path, why);
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  cfg.problem = LogicalProblem::zero(2);
  cfg.problem.h_x_init << -1.0, -1.0;
  cfg.problem.h_z_final << -0.5, 0.0;
  cfg.problem.j_z_final(0, 1) = -1.0;
  cfg.problem.j_z_final(1, 0) = -1.0;
  return cfg;
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text, nullptr, /*allow_exceptions=*/true,
                      /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }

  RunConfig cfg = default_config();
  check_keys(doc, "",
             {"code", "problem", "eta_p", "bath", "schedule", "integrator",
              "output", "lamb_shift", "seed"});

  if (const json* code = find(doc, "code")) {
    if (!code->is_object()) bad_key("code", "must be an object");
    check_keys(*code, "code",
               {"preset", "generators", "logical_x", "logical_z", "distance",
                "pad_qubits"});
    const bool explicit_code = find(*code, "generators") != nullptr;
    if (explicit_code) {
      require(find(*code, "preset") == nullptr, "code.preset",
              "cannot be combined with explicit generators");
      require(find(*code, "logical_x") != nullptr &&
                  find(*code, "logical_z") != nullptr &&
                  find(*code, "distance") != nullptr,
              "code",
              "explicit form needs generators, logical_x, logical_z and "
              "distance");
      read_string_array(*code, "code", "generators", cfg.code_generators);
      read_string_array(*code, "code", "logical_x", cfg.code_logical_x);
      read_string_array(*code, "code", "logical_z", cfg.code_logical_z);
      long d = 0;
      read_int(*code, "code", "distance", d);
      require(d >= 1, "code.distance", "must be >= 1");
      cfg.code_distance = static_cast<int>(d);
    } else {
      require(find(*code, "logical_x") == nullptr &&
                  find(*code, "logical_z") == nullptr &&
                  find(*code, "distance") == nullptr,
              "code", "logical_x/logical_z/distance need generators");
      read_string(*code, "code", "preset", cfg.code_preset);
    }
    long pad = cfg.pad_qubits;
    read_int(*code, "code", "pad_qubits", pad);
    require(pad >= 0, "code.pad_qubits", "must be >= 0");
    cfg.pad_qubits = static_cast<int>(pad);
  }

  StabilizerCode code;
  try {
    code = build_config_code(cfg);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("code section is invalid: ") + e.what());
  }

  if (const json* prob = find(doc, "problem")) {
    if (!prob->is_object()) bad_key("problem", "must be an object");
    check_keys(*prob, "problem",
               {"h_x_init", "h_x_final", "h_z_init", "h_z_final", "j_x_init",
                "j_x_final", "j_z_init", "j_z_final"});
    const Eigen::Index k = code.k;
    cfg.problem = LogicalProblem::zero(code.k);
    read_vector(*prob, "problem", "h_x_init", cfg.problem.h_x_init, k);
    read_vector(*prob, "problem", "h_x_final", cfg.problem.h_x_final, k);
    read_vector(*prob, "problem", "h_z_init", cfg.problem.h_z_init, k);
    read_vector(*prob, "problem", "h_z_final", cfg.problem.h_z_final, k);
    read_matrix(*prob, "problem", "j_x_init", cfg.problem.j_x_init, k, k);
    read_matrix(*prob, "problem", "j_x_final", cfg.problem.j_x_final, k, k);
    read_matrix(*prob, "problem", "j_z_init", cfg.problem.j_z_init, k, k);
    read_matrix(*prob, "problem", "j_z_final", cfg.problem.j_z_final, k, k);
  } else if (code.k != 2) {
    // The built-in desk problem is two-logical-qubit; other codes need an
    // explicit problem section.
    cfg.problem = LogicalProblem::zero(code.k);
  }

  read_double(doc, "", "eta_p", cfg.eta_p);
  require(cfg.eta_p > 0.0, "eta_p", "must be > 0");

  if (const json* bath = find(doc, "bath")) {
    if (!bath->is_object()) bad_key("bath", "must be an object");
    check_keys(*bath, "bath",
               {"beta", "omega_c", "kappa", "coupling_preset", "correlation"});
    read_double(*bath, "bath", "beta", cfg.beta);
    read_double(*bath, "bath", "omega_c", cfg.omega_c);
    read_double(*bath, "bath", "kappa", cfg.kappa);
    read_string(*bath, "bath", "coupling_preset", cfg.coupling_preset);
    if (const json* corr = find(*bath, "correlation")) {
      if (!corr->is_array() || corr->empty()) {
        bad_key("bath.correlation", "must be a non-empty array of rows");
      }
      const auto rows = static_cast<Eigen::Index>(corr->size());
      read_matrix(*bath, "bath", "correlation", cfg.bath_correlation, rows,
                  rows);
    }
    require(cfg.beta > 0.0, "bath.beta", "must be > 0");
    require(cfg.omega_c > 0.0, "bath.omega_c", "must be > 0");
    require(cfg.kappa >= 0.0, "bath.kappa", "must be >= 0");
  }

  if (const json* sched = find(doc, "schedule")) {
    if (!sched->is_object()) bad_key("schedule", "must be an object");
    check_keys(*sched, "schedule", {"t_f", "v"});
    read_double(*sched, "schedule", "t_f", cfg.schedule.t_f);
    long v = cfg.schedule.v;
    read_int(*sched, "schedule", "v", v);
    require(v >= 0 && v <= kMaxScheduleOrder, "schedule.v",
            "must lie in [0, " + std::to_string(kMaxScheduleOrder) + "]");
    cfg.schedule.v = static_cast<int>(v);
    require(cfg.schedule.t_f >= 0.0, "schedule.t_f", "must be >= 0");
  }

  if (const json* integ = find(doc, "integrator")) {
    if (!integ->is_object()) bad_key("integrator", "must be an object");
    check_keys(*integ, "integrator",
               {"rtol", "atol", "fixed_dt", "max_steps", "safety"});
    read_double(*integ, "integrator", "rtol", cfg.integrator.rtol);
    read_double(*integ, "integrator", "atol", cfg.integrator.atol);
    read_double(*integ, "integrator", "fixed_dt", cfg.integrator.fixed_dt);
    read_int(*integ, "integrator", "max_steps", cfg.integrator.max_steps);
    read_double(*integ, "integrator", "safety", cfg.integrator.safety);
    require(cfg.integrator.rtol > 0.0 && cfg.integrator.rtol <= 1.0,
            "integrator.rtol", "must lie in (0, 1]");
    require(cfg.integrator.atol > 0.0 && cfg.integrator.atol <= 1.0,
            "integrator.atol", "must lie in (0, 1]");
    require(cfg.integrator.fixed_dt >= 0.0, "integrator.fixed_dt",
            "must be >= 0");
    require(cfg.integrator.max_steps >= 1, "integrator.max_steps",
            "must be >= 1");
    require(cfg.integrator.safety > 0.0 && cfg.integrator.safety <= 1.0,
            "integrator.safety", "must lie in (0, 1]");
  }

  if (const json* out = find(doc, "output")) {
    if (!out->is_object()) bad_key("output", "must be an object");
    check_keys(*out, "output", {"grid", "directory", "late_window"});
    long grid = cfg.grid;
    read_int(*out, "output", "grid", grid);
    require(grid >= 2 && grid <= 10000000, "output.grid",
            "must lie in [2, 1e7]");
    cfg.grid = static_cast<int>(grid);
    read_string(*out, "output", "directory", cfg.output_dir);
    read_double(*out, "output", "late_window", cfg.late_window);
    require(cfg.late_window >= 0.0, "output.late_window", "must be >= 0");
  }

  read_bool(doc, "", "lamb_shift", cfg.lamb_shift);
  if (cfg.lamb_shift) {
    throw ConfigError(
        "config key 'lamb_shift' is a reserved extension point and must be "
        "false");
  }

  if (const json* seed = find(doc, "seed")) {
    if (!seed->is_number_unsigned()) {
      bad_key("seed", "must be a non-negative integer");
    }
    cfg.seed = seed->get<std::uint64_t>();
  }

  // Surface bath inconsistencies (bad coupling preset, correlation shape)
  // at parse time rather than mid-run.
  try {
    validate_bath(build_bath(cfg, code.n), code.n);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("bath section is invalid: ") + e.what());
  }
  try {
    validate_problem(cfg.problem, code.k);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("problem section is invalid: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

StabilizerCode build_config_code(const RunConfig& config) {
  StabilizerCode code;
  if (!config.code_generators.empty()) {
    const auto parse_terms = [](const std::vector<std::string>& names) {
      std::vector<PauliTerm> terms;
      terms.reserve(names.size());
      for (const std::string& name : names) {
        terms.push_back(PauliTerm::from_string(name));
      }
      return terms;
    };
    const int n = static_cast<int>(config.code_generators.front().size());
    const int k = static_cast<int>(config.code_logical_x.size());
    code = make_code(n, k, config.code_distance,
                     parse_terms(config.code_generators),
                     parse_terms(config.code_logical_x),
                     parse_terms(config.code_logical_z));
  } else {
    code = build_code(config.code_preset);
  }
  if (config.pad_qubits > 0) {
    code = pad_code(code, config.pad_qubits);
  }
  return code;
}

Model build_model(const RunConfig& config) {
  Model model;
  model.code = build_config_code(config);
  model.problem = config.problem;
  model.schedule = config.schedule;
  model.eta_p = config.eta_p;
  validate_problem(model.problem, model.code.k);
  return model;
}

BathModel build_bath(const RunConfig& config, int n_qubits) {
  BathModel bath;
  bath.beta = config.beta;
  bath.omega_c = config.omega_c;
  bath.kappa = config.kappa;
  bath.couplings = coupling_preset(config.coupling_preset, n_qubits);
  bath.correlation = config.bath_correlation;
  return bath;
}

}  // namespace pensim
