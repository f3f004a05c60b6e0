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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "pensim/bounds.hpp"
#include "pensim/config.hpp"
#include "pensim/propagate.hpp"

namespace pensim {

/// One configured evolution: the sampled trajectory plus the assembled
/// suppression-bound report.
struct RunResult {
  Trajectory trajectory;
  BoundReport report;
};

/// Builds the model and bath from `config`, evolves the maximally mixed
/// codespace initial state over `config.grid` snapshots, and evaluates the
/// population bound.
RunResult run_single(const RunConfig& config);

/// Trajectory CSV with columns t, p_perp, rate_total, rate_diag,
/// rate_offdiag, coherence_norm, codespace_leakage, trace_error, min_eig.
/// All floating values carry 17 significant digits.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

/// Bound-report CSV: header plus a single row holding every BoundReport
/// field.
void write_bound_csv(const BoundReport& report, std::ostream& out);

enum class SweepAxis { eta_p, t_f, v };

/// Accepts "eta_p", "t_f", or "v"; throws ConfigError otherwise.
SweepAxis parse_axis(std::string_view name);

std::string axis_name(SweepAxis axis);

struct SweepPoint {
  double value = 0.0;
  BoundReport report;
  /// p_perp(t_f) of the kappa=0 companion run: the diabatic floor that the
  /// penalty cannot suppress. Computed for the eta_p axis, zero otherwise.
  double closed_p_perp = 0.0;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::eta_p;
  std::vector<SweepPoint> points;  // ascending in value
  bool has_fit = false;
  /// eta_p axis: slope of ln p_perp(t_f) against eta_p, floor-filtered.
  /// t_f axis: power-law exponent of late-time coherence against t_f.
  LinearFit fit;
};

/// Runs one evolution per axis value (plus a kappa=0 floor run per value on
/// the eta_p axis). Points are dispatched to a thread pool sized by the
/// PENSIM_WORKERS environment variable (default: hardware concurrency);
/// rows come back ordered by value regardless of completion order. Requires
/// at least two distinct values; the v axis additionally requires
/// non-negative integers.
SweepResult run_sweep(const RunConfig& config, SweepAxis axis,
                      std::vector<double> values);

/// Sweep CSV: one row per point carrying the full bound report, then a
/// summary row with fitted slope, intercept, and r^2 when the axis defines
/// a fit.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

}  // namespace pensim
