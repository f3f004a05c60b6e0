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

#include "pensim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>
#include <utility>

#include "pensim/errors.hpp"

namespace pensim {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

constexpr const char* kBoundColumns =
    "eta_p,beta,t_f,penalty_gap,gamma_max,sum_m_tilde,sum_F_norms,"
    "q_measured,q_structural,bound_value,bound_relaxed,p_perp_measured,"
    "p_perp_max,coherence_late,min_gap,min_excitation_energy";

void write_bound_fields(const BoundReport& r, std::ostream& out) {
  out << fmt(r.eta_p) << ',' << fmt(r.beta) << ',' << fmt(r.t_f) << ','
      << fmt(r.penalty_gap) << ',' << fmt(r.gamma_max) << ','
      << fmt(r.sum_m_tilde) << ',' << fmt(r.sum_f_norms) << ','
      << fmt(r.q_measured) << ',' << fmt(r.q_structural) << ','
      << fmt(r.bound_value) << ',' << fmt(r.bound_relaxed) << ','
      << fmt(r.p_perp_measured) << ',' << fmt(r.p_perp_max) << ','
      << fmt(r.coherence_late) << ',' << fmt(r.min_gap) << ','
      << fmt(r.min_excitation_energy);
}

RunConfig with_axis_value(RunConfig cfg, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::eta_p:
      cfg.eta_p = value;
      break;
    case SweepAxis::t_f:
      cfg.schedule.t_f = value;
      break;
    case SweepAxis::v:
      cfg.schedule.v = static_cast<int>(std::lround(value));
      break;
  }
  return cfg;
}

int worker_count(std::size_t task_count) {
  const unsigned hw = std::thread::hardware_concurrency();
  long n = hw > 0 ? static_cast<long>(hw) : 2;
  if (const char* env = std::getenv("PENSIM_WORKERS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1) {
      throw ConfigError("PENSIM_WORKERS must be a positive integer");
    }
    n = parsed;
  }
  n = std::min<long>(n, static_cast<long>(task_count));
  return static_cast<int>(std::max<long>(n, 1));
}

}  // namespace

RunResult run_single(const RunConfig& config) {
  const Model model = build_model(config);
  const BathModel bath = build_bath(config, model.code.n);
  const PreparedSystem sys = prepare(model, bath);

  EvolveOptions opts;
  opts.integrator = config.integrator;
  opts.snapshots = config.grid;

  RunResult result;
  result.trajectory = evolve(sys, opts);
  result.report =
      suppression_bound(sys, result.trajectory, config.late_window);
  return result;
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  out << "t,p_perp,rate_total,rate_diag,rate_offdiag,coherence_norm,"
         "codespace_leakage,trace_error,min_eig\n";
  for (const TrajectoryPoint& p : trajectory.points) {
    out << fmt(p.t) << ',' << fmt(p.p_perp) << ',' << fmt(p.rate_total) << ','
        << fmt(p.rate_diag) << ',' << fmt(p.rate_offdiag) << ','
        << fmt(p.coherence_norm) << ',' << fmt(p.codespace_leakage) << ','
        << fmt(p.trace_error) << ',' << fmt(p.min_eig) << '\n';
  }
}

void write_bound_csv(const BoundReport& report, std::ostream& out) {
  out << kBoundColumns << '\n';
  write_bound_fields(report, out);
  out << '\n';
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "eta_p") return SweepAxis::eta_p;
  if (name == "t_f") return SweepAxis::t_f;
  if (name == "v") return SweepAxis::v;
  throw ConfigError("unknown sweep axis '" + std::string(name) +
                    "' (expected eta_p, t_f, or v)");
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::eta_p:
      return "eta_p";
    case SweepAxis::t_f:
      return "t_f";
    case SweepAxis::v:
      return "v";
  }
  throw ConfigError("invalid sweep axis");
}

SweepResult run_sweep(const RunConfig& config, SweepAxis axis,
                      std::vector<double> values) {
  if (values.size() < 2) {
    throw ConfigError("sweep needs at least two axis values");
  }
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw ConfigError("sweep values must be distinct");
  }
  for (const double v : values) {
    switch (axis) {
      case SweepAxis::eta_p:
        if (!(v > 0.0)) throw ConfigError("eta_p sweep values must be > 0");
        break;
      case SweepAxis::t_f:
        if (!(v >= 0.0)) throw ConfigError("t_f sweep values must be >= 0");
        break;
      case SweepAxis::v:
        if (v < 0.0 || v != std::floor(v) || v > kMaxScheduleOrder) {
          throw ConfigError("v sweep values must be integers in [0, " +
                            std::to_string(kMaxScheduleOrder) + "]");
        }
        break;
    }
  }

  SweepResult result;
  result.axis = axis;
  result.points.resize(values.size());

  std::vector<std::function<void()>> tasks;
  tasks.reserve(2 * values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    result.points[i].value = values[i];
    tasks.push_back([&result, &config, axis, &values, i] {
      const RunConfig cfg = with_axis_value(config, axis, values[i]);
      result.points[i].report = run_single(cfg).report;
    });
    if (axis == SweepAxis::eta_p) {
      tasks.push_back([&result, &config, axis, &values, i] {
        RunConfig cfg = with_axis_value(config, axis, values[i]);
        cfg.kappa = 0.0;
        result.points[i].closed_p_perp =
            run_single(cfg).report.p_perp_measured;
      });
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex fail_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      {
        std::lock_guard<std::mutex> lock(fail_mutex);
        if (failure) return;
      }
      try {
        tasks[i]();
      } catch (...) {
        std::lock_guard<std::mutex> lock(fail_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int n_workers = worker_count(tasks.size());
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  if (axis == SweepAxis::eta_p) {
    // Fit only points safely above the closed-system (diabatic) floor; the
    // residual leak at kappa=0 is what the penalty cannot touch.
    std::vector<std::pair<double, double>> pairs;
    for (const SweepPoint& p : result.points) {
      if (p.report.p_perp_measured >= 10.0 * p.closed_p_perp) {
        pairs.emplace_back(p.value, p.report.p_perp_measured);
      }
    }
    result.fit = eta_scaling_fit(pairs, 0.0);
    result.has_fit = true;
  } else if (axis == SweepAxis::t_f) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(result.points.size());
    for (const SweepPoint& p : result.points) {
      pairs.emplace_back(p.value, p.report.coherence_late);
    }
    result.fit = power_law_fit(pairs);
    result.has_fit = true;
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "row,axis,value," << kBoundColumns
      << ",closed_p_perp,fit_slope,fit_intercept,fit_r2\n";
  const std::string axis = axis_name(result.axis);
  for (const SweepPoint& p : result.points) {
    out << "point," << axis << ',' << fmt(p.value) << ',';
    write_bound_fields(p.report, out);
    out << ',' << fmt(p.closed_p_perp) << ",,,\n";
  }
  if (result.has_fit) {
    out << "summary," << axis;
    // Empty value, bound, and floor columns; only the fit fields are set.
    for (int i = 0; i < 18; ++i) out << ',';
    out << fmt(result.fit.slope) << ',' << fmt(result.fit.intercept) << ','
        << fmt(result.fit.r_squared) << '\n';
  }
}

}  // namespace pensim
