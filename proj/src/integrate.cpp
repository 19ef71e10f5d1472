// Copyright 2026 The Cislunar SDA Toolkit Authors
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

#include "sda/integrate.hpp"

#include <cmath>

namespace sda {

Vec6 Trajectory::at(double t) const {
  const double lo = std::min(t_.front(), t_.back());
  const double hi = std::max(t_.front(), t_.back());
  const double tol = 1e-9 * std::max(1.0, hi - lo);
  if (t < lo - tol || t > hi + tol) {
    throw config_error("trajectory sampled outside its span");
  }
  if (t_.size() == 1) return y_.front();

  const bool fwd = t_.back() >= t_.front();
  // locate bracketing segment
  std::size_t i = 0;
  {
    std::size_t a = 0, b = t_.size() - 1;
    while (b - a > 1) {
      const std::size_t m = (a + b) / 2;
      const bool left = fwd ? (t <= t_[m]) : (t >= t_[m]);
      if (left)
        b = m;
      else
        a = m;
    }
    i = a;
  }
  const double ta = t_[i], tb = t_[i + 1];
  const double h = tb - ta;
  if (h == 0.0) return y_[i];
  const double th = std::clamp((t - ta) / h, 0.0, 1.0);
  const double th2 = th * th, th3 = th2 * th;
  const double h00 = 2 * th3 - 3 * th2 + 1;
  const double h10 = th3 - 2 * th2 + th;
  const double h01 = -2 * th3 + 3 * th2;
  const double h11 = th3 - th2;
  return h00 * y_[i] + (h10 * h) * f_[i] + h01 * y_[i + 1] + (h11 * h) * f_[i + 1];
}

Trajectory propagate(const Vec6& s0, double t0, double t1,
                     const IntegratorConfig& cfg, const CanonicalConstants& c) {
  if (!all_finite(s0)) throw config_error("non-finite initial state");
  Trajectory traj;
  Vec6 y = s0;
  detail::integrate_dopri5<6>(
      [&c](double, const Vec6& s) { return eom(s, c); }, t0, t1, y, cfg,
      [&traj](double t, const Vec6& yy, const Vec6& ff) { traj.push_node(t, yy, ff); });
  return traj;
}

Vec6 propagate_state(const Vec6& s0, double t0, double t1,
                     const IntegratorConfig& cfg, const CanonicalConstants& c) {
  if (!all_finite(s0)) throw config_error("non-finite initial state");
  Vec6 y = s0;
  detail::integrate_dopri5<6>(
      [&c](double, const Vec6& s) { return eom(s, c); }, t0, t1, y, cfg,
      [](double, const Vec6&, const Vec6&) {});
  return y;
}

PlaneCrossing propagate_to_plane_crossing(const Vec6& s0, bool backward,
                                          double max_horizon,
                                          const IntegratorConfig& cfg,
                                          const CanonicalConstants& c) {
  if (!(max_horizon > 0.0)) throw config_error("max_horizon must be positive");
  if (std::abs(s0[0]) < 1e-12) return {s0, 0.0};

  const double dir = backward ? -1.0 : 1.0;
  // march in segments, watching for a sign change of x at accepted nodes
  double t_prev = 0.0;
  Vec6 y_prev = s0;
  std::optional<std::pair<double, double>> bracket;  // times around the crossing
  Vec6 y_bracket_lo;

  struct CrossingFound {};
  Vec6 y = s0;
  try {
    detail::integrate_dopri5<6>(
        [&c](double, const Vec6& s) { return eom(s, c); }, 0.0, dir * max_horizon, y, cfg,
        [&](double t, const Vec6& yy, const Vec6&) {
          if (t != t_prev && std::signbit(yy[0]) != std::signbit(y_prev[0])) {
            bracket = {t_prev, t};
            y_bracket_lo = y_prev;
            throw CrossingFound{};
          }
          t_prev = t;
          y_prev = yy;
        });
  } catch (const CrossingFound&) {
  }

  if (!bracket) {
    throw numerical_error("no yz-plane crossing within horizon of " +
                          std::to_string(max_horizon) + " TU");
  }

  // bisect on re-integration from the bracketing node
  double lo = 0.0, hi = bracket->second - bracket->first;
  const Vec6 base = y_bracket_lo;
  double x_lo = base[0];
  Vec6 best = base;
  double best_dt = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Vec6 ym = propagate_state(base, 0.0, mid, cfg, c);
    if (std::abs(ym[0]) < 1e-11) {
      best = ym;
      best_dt = mid;
      break;
    }
    if (std::signbit(ym[0]) == std::signbit(x_lo)) {
      lo = mid;
    } else {
      hi = mid;
    }
    best = ym;
    best_dt = mid;
    if (std::abs(hi - lo) < 1e-16 * std::max(1.0, std::abs(bracket->second))) break;
  }
  if (std::abs(best[0]) >= 1e-10) {
    throw numerical_error("plane-crossing refinement stalled (|x| = " +
                          std::to_string(std::abs(best[0])) + ")");
  }
  return {best, bracket->first + best_dt};
}

}  // namespace sda
