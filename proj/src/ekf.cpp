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

#include "sda/ekf.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace sda {

namespace {

using Vec42 = Eigen::Matrix<double, 42, 1>;

Mat6 symmetrized(const Mat6& p) { return 0.5 * (p + p.transpose()); }

// Clamp negative eigenvalues (down to the -1e-12 tolerance) to zero.
Mat6 psd_floor(const Mat6& p_sym) {
  Eigen::SelfAdjointEigenSolver<Mat6> es(p_sym);
  if (es.info() != Eigen::Success) {
    throw numerical_error("covariance eigendecomposition failed");
  }
  if (es.eigenvalues().minCoeff() >= 0.0) return p_sym;
  Vec6 ev = es.eigenvalues();
  for (int i = 0; i < 6; ++i) ev[i] = std::max(ev[i], 0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Mat6 build_snc_q(double sigma_dyn, double dt) {
  if (sigma_dyn < 0.0) throw config_error("sigma_dyn must be non-negative");
  if (!(dt > 0.0)) throw config_error("dt must be positive");
  const double s2 = sigma_dyn * sigma_dyn;
  const double a = dt * dt / 2.0;
  Mat6 q = Mat6::Zero();
  q.block<3, 3>(0, 0) = (a * a * s2) * Mat3::Identity();
  q.block<3, 3>(0, 3) = (a * dt * s2) * Mat3::Identity();
  q.block<3, 3>(3, 0) = (a * dt * s2) * Mat3::Identity();
  q.block<3, 3>(3, 3) = (dt * dt * s2) * Mat3::Identity();
  return q;
}

NoiseModel make_noise_model(double sigma_dyn, double dt, double sigma_angle) {
  NoiseModel nm;
  nm.sigma_dyn = sigma_dyn;
  nm.dt = dt;
  nm.q = build_snc_q(sigma_dyn, dt);
  // a zero assumed measurement noise makes the stacked innovation covariance
  // structurally singular (more measurement rows than state rank); floor it
  // at a level nine orders below the real sensors
  const double sigma = std::max(sigma_angle, 1e-12);
  nm.r_per_observer = sigma * sigma * Eigen::Matrix2d::Identity();
  return nm;
}

DynamicsModel cr3bp_dynamics(const CanonicalConstants& c) {
  return {[c](const Vec6& s) { return eom(s, c); },
          [c](const Vec6& s) { return eom_jacobian(s, c); }};
}

DynamicsModel zero_dynamics() {
  return {[](const Vec6&) { return Vec6::Zero().eval(); },
          [](const Vec6&) { return Mat6::Zero().eval(); }};
}

FilterState init_estimate(const Vec6& truth_ic, const NoiseModel& noise, uint64_t seed,
                          double perturbation_scale) {
  Rng rng(hash_combine(seed, kSeedInit));
  FilterState fs;
  fs.epoch = 0.0;
  Vec6 err;
  for (int i = 0; i < 6; ++i) {
    err[i] = perturbation_scale * std::sqrt(noise.q(i, i)) * rng.normal();
  }
  fs.x_hat = truth_ic + err;
  fs.p = Mat6::Zero();
  for (int i = 0; i < 6; ++i) fs.p(i, i) = std::max(err[i] * err[i], kP0Floor);
  return fs;
}

FilterState predict(const FilterState& fs, double dt, const NoiseModel& noise,
                    const IntegratorConfig& cfg, const DynamicsModel& dyn) {
  if (!(dt > 0.0)) throw config_error("predict needs dt > 0");

  Vec42 y;
  y.head<6>() = fs.x_hat;
  Eigen::Map<Mat6>(y.data() + 6) = fs.p;

  const Mat6& q = noise.q;
  auto rhs = [&dyn, &q](double, const Vec42& yy) {
    Vec42 dy;
    const Vec6 s = yy.head<6>();
    const Mat6 p = Eigen::Map<const Mat6>(yy.data() + 6);
    const Mat6 a = dyn.jacobian(s);
    dy.head<6>() = dyn.f(s);
    Eigen::Map<Mat6>(dy.data() + 6) = a * p + p * a.transpose() + q;
    return dy;
  };
  detail::integrate_dopri5<42>(rhs, fs.epoch, fs.epoch + dt, y, cfg,
                               [](double, const Vec42&, const Vec42&) {});

  FilterState out;
  out.epoch = fs.epoch + dt;
  out.x_hat = y.head<6>();
  out.p = psd_floor(symmetrized(Eigen::Map<Mat6>(y.data() + 6)));
  return out;
}

FilterState kalman_update(const FilterState& fs, const Eigen::MatrixXd& h,
                          const Eigen::VectorXd& residual, const Eigen::MatrixXd& r) {
  const Eigen::Index m = h.rows();
  if (h.cols() != 6 || r.rows() != m || r.cols() != m || residual.size() != m) {
    throw config_error("kalman_update dimension mismatch");
  }
  const Eigen::MatrixXd s = h * fs.p * h.transpose() + r;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(s);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw numerical_error("innovation covariance is numerically singular");
  }
  const double dmax = ldlt.vectorD().maxCoeff();
  const double dmin = ldlt.vectorD().minCoeff();
  if (!(dmin > 0.0) || dmax / dmin > 1e15) {
    throw numerical_error("innovation covariance ill-conditioned (cond ~ " +
                          std::to_string(dmin > 0.0 ? dmax / dmin : INFINITY) + ")");
  }

  // K = P H^T S^-1, via the factorization rather than an explicit inverse
  const Eigen::MatrixXd k = ldlt.solve(h * fs.p).transpose();

  FilterState out;
  out.epoch = fs.epoch;
  out.x_hat = fs.x_hat + k * residual;
  out.p = psd_floor(symmetrized((Mat6::Identity() - k * h) * fs.p));
  return out;
}

CorrectionResult correct(const FilterState& fs, const std::vector<TaskedObservation>& tasked,
                         const NoiseModel& noise, const CanonicalConstants& c) {
  std::vector<Eigen::Matrix<double, 2, 6>> h_blocks;
  std::vector<Vec2> residuals;
  int dropped = 0;

  for (const auto& obs : tasked) {
    if (!obs.measurement) continue;
    try {
      const RelativeGeometry geom = relative_geometry(obs.observer_state, fs.x_hat, c.mu);
      const Vec2 predicted = measure(geom);
      const auto h = measurement_jacobian(geom);
      h_blocks.push_back(h);
      residuals.push_back(*obs.measurement - predicted);
    } catch (const Error&) {
      ++dropped;  // degenerate at the estimate: drop this observer's rows
    }
  }

  CorrectionResult result;
  result.observers_dropped_degenerate = dropped;
  if (h_blocks.empty()) {
    result.state = fs;
    result.corrected = false;
    return result;
  }

  const int m = static_cast<int>(h_blocks.size());
  Eigen::MatrixXd h(2 * m, 6);
  Eigen::VectorXd resid(2 * m);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    h.block<2, 6>(2 * i, 0) = h_blocks[i];
    resid.segment<2>(2 * i) = residuals[i];
    r.block<2, 2>(2 * i, 2 * i) = noise.r_per_observer;
  }

  result.state = kalman_update(fs, h, resid, r);
  result.observers_used = m;
  result.corrected = true;
  return result;
}

TrackData run_track(const Vec6& truth_ic, const std::vector<Vec6>& constellation,
                    const TaskingSchedule& schedule, const NoiseModel& noise,
                    const SensorSpec& sensor, uint64_t seed, const TrackOptions& opts) {
  if (constellation.empty()) throw config_error("constellation must not be empty");
  if (static_cast<int>(constellation.size()) != schedule.n_observers()) {
    throw config_error("constellation size does not match the schedule");
  }

  const auto bodies = occluding_bodies(opts.consts);
  const double dt = schedule.system_cadence();
  const int n = schedule.epoch_count(opts.horizon);
  const DynamicsModel dyn = cr3bp_dynamics(opts.consts);

  TrackData track;
  track.truth_ic = truth_ic;
  track.initial = init_estimate(truth_ic, noise, seed, opts.init_perturbation_scale);
  track.epochs.reserve(n);

  Vec6 truth = truth_ic;
  std::vector<Vec6> observers = constellation;
  FilterState fs = track.initial;

  const auto* eph = opts.observer_ephemerides;
  if (eph && (eph->size() != constellation.size() ||
              (!eph->empty() && static_cast<int>((*eph)[0].size()) < n))) {
    throw config_error("observer ephemerides do not cover the epoch grid");
  }

  for (int k = 1; k <= n; ++k) {
    const double t_prev = (k - 1) * dt;
    const double t_now = k * dt;
    try {
      truth = propagate_state(truth, t_prev, t_now, opts.integ, opts.consts);
      if (eph) {
        for (std::size_t i = 0; i < observers.size(); ++i) observers[i] = (*eph)[i][k - 1];
      } else {
        for (auto& o : observers) o = propagate_state(o, t_prev, t_now, opts.integ, opts.consts);
      }

      fs = predict(fs, dt, noise, opts.integ, dyn);

      std::vector<TaskedObservation> tasked;
      int visible_count = 0;
      for (int oi : schedule.tasked(k)) {
        TaskedObservation to;
        to.observer_state = observers[oi];
        if (visibility(observers[oi], truth, sensor, bodies, opts.consts.mu)) {
          Rng rng(hash_combine(hash_combine(hash_combine(seed, kSeedMeasurement),
                                            static_cast<uint64_t>(k)),
                               static_cast<uint64_t>(oi)));
          try {
            to.measurement = synthesize_measurement(
                relative_geometry(observers[oi], truth, opts.consts.mu), sensor, rng);
            ++visible_count;
          } catch (const Error&) {
            // a projection degenerate at the truth state cannot be measured
          }
        }
        tasked.push_back(std::move(to));
      }

      const CorrectionResult cr = correct(fs, tasked, noise, opts.consts);
      fs = cr.state;

      EpochRecord rec;
      rec.t = t_now;
      rec.truth = truth;
      rec.estimate = fs.x_hat;
      rec.p_diag = fs.p.diagonal();
      rec.visible_count = visible_count;
      rec.corrected = cr.corrected;
      track.epochs.push_back(rec);
    } catch (const Error& e) {
      track.error_flag = true;
      track.error_message = "epoch " + std::to_string(k) + ": " + e.what();
      break;
    }
  }
  return track;
}

}  // namespace sda
