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

#include <utility>
#include <vector>

#include "pensim/propagate.hpp"

namespace pensim {

/// Everything needed to compare the analytic excitation bound against a
/// measured trajectory. The headline inequality is
///   p_perp(t_f) <= t_f * gamma_max * exp(-beta * eta_p * g) * sum_m_tilde
///               +  t_f * q_measured,
/// with a looser variant that replaces sum_m_tilde by sum_f_norms.
struct BoundReport {
  double eta_p = 0.0;
  double beta = 0.0;
  double t_f = 0.0;
  double penalty_gap = 0.0;  // g
  double gamma_max = 0.0;
  double sum_m_tilde = 0.0;
  double sum_f_norms = 0.0;
  double q_measured = 0.0;
  double q_structural = 0.0;
  double bound_value = 0.0;
  double bound_relaxed = 0.0;
  double p_perp_measured = 0.0;  // p_perp at the final snapshot
  double p_perp_max = 0.0;
  double coherence_late = 0.0;
  double min_gap = 0.0;
  double min_excitation_energy = 0.0;
};

/// Largest weighted downhill thermal rate into a non-codespace cluster,
/// maximized over the snapshot grid. Zero when kappa = 0.
double gamma_max(const Trajectory& traj);

/// Largest (over the snapshot grid) total excitation amplitude
/// sum over couplings and non-codespace clusters of m(0, l).
double sum_m_tilde(const Trajectory& traj);

/// Structural surrogate sum over couplings of ||F_alpha||^2 (squared
/// operator norms of the bare coupling operators). Always >= sum_m_tilde.
double sum_f_norms(const PreparedSystem& sys);

struct OffdiagBound {
  double q_structural = 0.0;  // 2 max||Hdot|| max coherence / min gap
  double q_measured = 0.0;    // max |Q(t)| along the trajectory
};

/// q_measured <= q_structural + 1e-10 holds on every valid trajectory.
OffdiagBound offdiag_bound(const Trajectory& traj);

/// Maximum of coherence_norm over the closing window t >= t_f - window.
/// The window has fixed duration (not a fraction of t_f) so that the
/// windowed maximum scales like the endpoint value, t_f^-(v+1); a
/// proportional window would pick up the t_f^-1 mid-anneal tail instead.
double late_time_coherence(const Trajectory& traj, double window = 2.0);

/// Assemble the full report for one completed run.
BoundReport suppression_bound(const PreparedSystem& sys,
                              const Trajectory& traj,
                              double late_window = 2.0);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
};

/// Least squares of ln p_perp against eta_p, restricted to points clearly
/// above the diabatic floor (p >= 10 * floor and p > 1e-14). Fewer than
/// two surviving points is a degenerate fit (NumericError).
LinearFit eta_scaling_fit(
    const std::vector<std::pair<double, double>>& eta_pperp, double floor);

/// Least squares of ln y against ln x over points with x, y > 0. Fewer
/// than two valid points is a degenerate fit (NumericError).
LinearFit power_law_fit(const std::vector<std::pair<double, double>>& xy);

/// Penalty sizing arithmetic: the growth rate r with eta_p = r ln(n)
/// needed to cancel a poly(n) exponent, r = target_exponent / (beta * g).
double required_penalty_rate(double target_exponent, double beta, double g);

}  // namespace pensim
