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

#ifndef SDA_INTEGRATE_HPP
#define SDA_INTEGRATE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "sda/cr3bp.hpp"
#include "sda/errors.hpp"
#include "sda/state.hpp"

namespace sda {

// Embedded Dormand-Prince 4(5) with PI step-size control, implemented
// in-repo so that seeded runs are identical across platforms.
struct IntegratorConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double max_step = 0.5;  // TU

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw config_error("integrator tolerances must be positive");
    if (!(max_step > 0.0)) throw config_error("max_step must be positive");
  }
};

namespace detail {

// Butcher tableau of the Dormand-Prince 5(4) pair (the ode45 pair).
struct Dopri5Tableau {
  static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                          a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                          b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  // b - bhat, for the embedded 4th-order error estimate
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
};

// Integrates y' = f(t, y) from t0 to t1 (either direction). Calls
// node_fn(t, y, f(t, y)) at t0 and after every accepted step. Throws on step
// underflow. F: VecN(double t, const VecN& y).
template <int N, class F, class NodeFn>
void integrate_dopri5(F&& f, double t0, double t1,
                      Eigen::Matrix<double, N, 1>& y, const IntegratorConfig& cfg,
                      NodeFn&& node_fn) {
  using VecN = Eigen::Matrix<double, N, 1>;
  using T = Dopri5Tableau;
  cfg.validate();
  if (!std::isfinite(t0) || !std::isfinite(t1)) throw config_error("non-finite time span");

  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  double t = t0;
  VecN k1 = f(t, y);
  node_fn(t, y, k1);
  if (span == 0.0) return;

  // initial step: conservative fraction of the span, bounded by max_step
  double h = dir * std::min({cfg.max_step, span, std::max(1e-6, 1e-2 * span)});
  const double h_min = std::max(span, 1.0) * 1e4 * std::numeric_limits<double>::epsilon();

  double err_old = 1e-4;
  VecN k2, k3, k4, k5, k6, k7, y_new, y_err;
  int rejected_in_a_row = 0;

  while (dir * (t1 - t) > 0.0) {
    if (dir * (t + h) > dir * t1) h = t1 - t;
    if (std::abs(h) < h_min) {
      throw numerical_error("integrator step underflow at t=" + std::to_string(t));
    }

    k2 = f(t + T::c2 * h, y + h * (T::a21 * k1));
    k3 = f(t + T::c3 * h, y + h * (T::a31 * k1 + T::a32 * k2));
    k4 = f(t + T::c4 * h, y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3));
    k5 = f(t + T::c5 * h, y + h * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4));
    k6 = f(t + h, y + h * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 + T::a64 * k4 + T::a65 * k5));
    y_new = y + h * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 + T::b6 * k6);
    k7 = f(t + h, y_new);  // FSAL
    y_err = h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);

    double err_sq = 0.0;
    for (int i = 0; i < N; ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      const double e = y_err[i] / sc;
      err_sq += e * e;
    }
    const double err = std::sqrt(err_sq / N);

    if (err <= 1.0 || std::abs(h) <= h_min * 1.0000001) {
      t = (dir * (t + h) >= dir * t1) ? t1 : t + h;
      y = y_new;
      k1 = k7;
      node_fn(t, y, k1);
      const double e_clamped = std::max(err, 1e-10);
      double scale = 0.8 * std::pow(e_clamped, -0.17) * std::pow(err_old, 0.04);
      scale = std::clamp(scale, 0.2, 5.0);
      err_old = e_clamped;
      h *= scale;
      if (std::abs(h) > cfg.max_step) h = dir * cfg.max_step;
      rejected_in_a_row = 0;
    } else {
      const double scale = std::max(0.2, 0.8 * std::pow(err, -0.2));
      h *= scale;
      if (++rejected_in_a_row > 200) {
        throw numerical_error("integrator cannot satisfy tolerance at t=" + std::to_string(t));
      }
    }
    if (!y.allFinite()) {
      throw numerical_error("integration diverged (non-finite state) at t=" + std::to_string(t));
    }
  }
}

}  // namespace detail

// Dense trajectory over one propagation: states and derivatives at accepted
// steps, cubic Hermite in between.
class Trajectory {
 public:
  double t_begin() const { return t_.front(); }
  double t_end() const { return t_.back(); }
  const Vec6& final_state() const { return y_.back(); }
  std::size_t node_count() const { return t_.size(); }
  double node_time(std::size_t i) const { return t_[i]; }
  const Vec6& node_state(std::size_t i) const { return y_[i]; }

  // Sample at any time inside the span (inclusive, with a small tolerance).
  Vec6 at(double t) const;

  void push_node(double t, const Vec6& y, const Vec6& f) {
    t_.push_back(t);
    y_.push_back(y);
    f_.push_back(f);
  }

 private:
  std::vector<double> t_;
  std::vector<Vec6> y_;
  std::vector<Vec6> f_;
};

// Propagate under CR3BP dynamics from t0 to t1 (backward allowed).
Trajectory propagate(const Vec6& s0, double t0, double t1,
                     const IntegratorConfig& cfg, const CanonicalConstants& c);

// Endpoint-only propagation; avoids storing nodes.
Vec6 propagate_state(const Vec6& s0, double t0, double t1,
                     const IntegratorConfig& cfg, const CanonicalConstants& c);

struct PlaneCrossing {
  Vec6 state;           // |x| < 1e-10 DU
  double crossing_time; // signed, relative to the seed epoch
};

// Propagate toward the yz-plane (x = 0) and stop at the first crossing,
// located by bisecting the sign change of x between accepted steps.
// `backward` selects the integration direction; `max_horizon` is the
// unsigned time budget. Throws when the horizon is exhausted.
PlaneCrossing propagate_to_plane_crossing(const Vec6& s0, bool backward,
                                          double max_horizon,
                                          const IntegratorConfig& cfg,
                                          const CanonicalConstants& c);

}  // namespace sda

#endif  // SDA_INTEGRATE_HPP
