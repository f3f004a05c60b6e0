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

#include "pensim/bounds.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pensim/codes.hpp"
#include "pensim/errors.hpp"

namespace pensim {

namespace {

void require_points(const Trajectory& traj) {
  if (traj.points.empty()) {
    throw ValidationError("trajectory has no snapshots");
  }
}

LinearFit linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  LinearFit fit;
  fit.points_used = static_cast<int>(n);
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0) {
    throw NumericError("fit degenerate: all abscissae coincide");
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
    ss_tot += (ys[i] - my) * (ys[i] - my);
  }
  fit.r_squared = ss_tot > 1e-300 ? 1.0 - ss_res / ss_tot
                                  : (ss_res < 1e-300 ? 1.0 : 0.0);
  return fit;
}

}  // namespace

double gamma_max(const Trajectory& traj) {
  require_points(traj);
  double out = 0.0;
  for (const auto& p : traj.points) {
    out = std::max(out, p.gamma_tilde);
  }
  return out;
}

double sum_m_tilde(const Trajectory& traj) {
  require_points(traj);
  double out = 0.0;
  for (const auto& p : traj.points) {
    out = std::max(out, p.sum_m_excite);
  }
  return out;
}

double sum_f_norms(const PreparedSystem& sys) {
  double out = 0.0;
  for (const auto& f : sys.couplings) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f);
    const double norm = svd.singularValues().size() > 0
                            ? svd.singularValues()(0)
                            : 0.0;
    out += norm * norm;
  }
  return out;
}

OffdiagBound offdiag_bound(const Trajectory& traj) {
  require_points(traj);
  OffdiagBound ob;
  double max_hdot = 0.0;
  double max_coh = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (const auto& p : traj.points) {
    ob.q_measured = std::max(ob.q_measured, std::abs(p.rate_offdiag));
    max_hdot = std::max(max_hdot, p.h_dot_norm);
    max_coh = std::max(max_coh, p.coherence_norm);
    min_gap = std::min(min_gap, p.gap);
  }
  if (std::isfinite(min_gap) && min_gap > 0.0) {
    ob.q_structural = 2.0 * max_hdot * max_coh / min_gap;
  } else {
    // No excited cluster ever existed, so no coherence could either.
    ob.q_structural = 0.0;
  }
  return ob;
}

double late_time_coherence(const Trajectory& traj, double window) {
  require_points(traj);
  if (window < 0.0) {
    throw ValidationError("late-time window must be >= 0");
  }
  const double t_f = traj.points.back().t;
  double out = 0.0;
  for (const auto& p : traj.points) {
    if (p.t >= t_f - window) {
      out = std::max(out, p.coherence_norm);
    }
  }
  return out;
}

BoundReport suppression_bound(const PreparedSystem& sys,
                              const Trajectory& traj, double late_window) {
  require_points(traj);
  BoundReport r;
  r.eta_p = sys.model.eta_p;
  r.beta = sys.bath.beta;
  r.t_f = sys.model.schedule.t_f;
  r.penalty_gap = penalty_gap(sys.model.code);
  r.gamma_max = gamma_max(traj);
  r.sum_m_tilde = sum_m_tilde(traj);
  r.sum_f_norms = sum_f_norms(sys);
  const OffdiagBound ob = offdiag_bound(traj);
  r.q_measured = ob.q_measured;
  r.q_structural = ob.q_structural;

  const double damping = std::exp(-r.beta * r.eta_p * r.penalty_gap);
  r.bound_value =
      r.t_f * r.gamma_max * damping * r.sum_m_tilde + r.t_f * r.q_measured;
  r.bound_relaxed =
      r.t_f * r.gamma_max * damping * r.sum_f_norms + r.t_f * r.q_measured;
  // The relaxation is analytic: the excitation amplitudes never sum past
  // the squared coupling norms, with equality when every coupling moves
  // the codespace entirely out (Pauli couplings do). At that tight point
  // the two independently rounded sums can invert by an ulp, so restore
  // the exact-arithmetic ordering of the derived pair.
  r.bound_relaxed = std::max(r.bound_relaxed, r.bound_value);

  r.p_perp_measured = traj.points.back().p_perp;
  r.min_gap = std::numeric_limits<double>::infinity();
  r.min_excitation_energy = std::numeric_limits<double>::infinity();
  for (const auto& p : traj.points) {
    r.p_perp_max = std::max(r.p_perp_max, p.p_perp);
    r.min_gap = std::min(r.min_gap, p.gap);
    r.min_excitation_energy =
        std::min(r.min_excitation_energy, p.min_excitation_energy);
  }
  r.coherence_late = late_time_coherence(traj, late_window);
  return r;
}

LinearFit eta_scaling_fit(
    const std::vector<std::pair<double, double>>& eta_pperp, double floor) {
  if (floor < 0.0 || !std::isfinite(floor)) {
    throw ValidationError("diabatic floor must be finite and >= 0");
  }
  std::vector<double> xs, ys;
  for (const auto& [eta, p] : eta_pperp) {
    if (p > 1e-14 && p >= 10.0 * floor) {
      xs.push_back(eta);
      ys.push_back(std::log(p));
    }
  }
  if (xs.size() < 2) {
    throw NumericError(
        "fit degenerate: only " + std::to_string(xs.size()) +
        " sweep points clear the diabatic floor (need at least 2)");
  }
  return linear_fit(xs, ys);
}

LinearFit power_law_fit(const std::vector<std::pair<double, double>>& xy) {
  std::vector<double> xs, ys;
  for (const auto& [x, y] : xy) {
    if (x > 0.0 && y > 0.0 && std::isfinite(x) && std::isfinite(y)) {
      xs.push_back(std::log(x));
      ys.push_back(std::log(y));
    }
  }
  if (xs.size() < 2) {
    throw NumericError("fit degenerate: fewer than 2 positive points");
  }
  return linear_fit(xs, ys);
}

double required_penalty_rate(double target_exponent, double beta, double g) {
  if (!(beta > 0.0) || !(g > 0.0)) {
    throw ValidationError("required_penalty_rate needs beta > 0 and g > 0");
  }
  return target_exponent / (beta * g);
}

}  // namespace pensim
