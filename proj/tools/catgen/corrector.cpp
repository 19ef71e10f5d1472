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

#include "corrector.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace catgen {

namespace {

using Vec42 = Eigen::Matrix<double, 42, 1>;
using sda::eom;
using sda::eom_jacobian;

}  // namespace

StmResult propagate_with_stm(const Vec6& s0, double t, const IntegratorConfig& cfg,
                             const CanonicalConstants& c) {
  Vec42 y;
  y.head<6>() = s0;
  Eigen::Map<Mat6>(y.data() + 6) = Mat6::Identity();

  auto rhs = [&c](double, const Vec42& yy) {
    Vec42 dy;
    const Vec6 s = yy.head<6>();
    const Mat6 phi = Eigen::Map<const Mat6>(yy.data() + 6);
    const Mat6 a = eom_jacobian(s, c);
    dy.head<6>() = eom(s, c);
    Eigen::Map<Mat6>(dy.data() + 6) = a * phi;
    return dy;
  };
  sda::detail::integrate_dopri5<42>(rhs, 0.0, t, y, cfg,
                                    [](double, const Vec42&, const Vec42&) {});
  return {y.head<6>(), Eigen::Map<Mat6>(y.data() + 6)};
}

double stability_index_of(const Mat6& monodromy) {
  Eigen::EigenSolver<Mat6> es(monodromy);
  double lam_max = 1.0;
  for (int i = 0; i < 6; ++i) {
    lam_max = std::max(lam_max, std::abs(es.eigenvalues()[i]));
  }
  return 0.5 * (lam_max + 1.0 / lam_max);
}

std::optional<Vec6> stable_direction(const Mat6& monodromy) {
  Eigen::EigenSolver<Mat6> es(monodromy);
  if (es.info() != Eigen::Success) return std::nullopt;
  int best = -1;
  double best_mag = 1.0;
  for (int i = 0; i < 6; ++i) {
    const auto lam = es.eigenvalues()[i];
    const double mag = std::abs(lam);
    // smallest-magnitude real eigenvalue below 1
    if (std::abs(lam.imag()) < 1e-9 * std::max(1.0, mag) && mag < best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  if (best < 0 || best_mag > 0.999) return std::nullopt;
  Vec6 v = es.eigenvectors().col(best).real();
  const double n = v.norm();
  if (!(n > 0.0)) return std::nullopt;
  return Vec6(v / n);
}

namespace {

// shared Newton driver; `fixed_period` drops the period column
std::optional<PeriodicOrbit> newton_periodic(const Vec6& guess, double period_guess,
                                             bool fixed_period, const IntegratorConfig& cfg,
                                             const CanonicalConstants& c, double tol,
                                             int max_iter);

}  // namespace

std::optional<PeriodicOrbit> correct_periodic(const Vec6& guess, double period_guess,
                                              const IntegratorConfig& cfg,
                                              const CanonicalConstants& c,
                                              double tol, int max_iter) {
  return newton_periodic(guess, period_guess, false, cfg, c, tol, max_iter);
}

std::optional<PeriodicOrbit> correct_periodic_fixed(const Vec6& guess, double period,
                                                    const IntegratorConfig& cfg,
                                                    const CanonicalConstants& c,
                                                    double tol, int max_iter) {
  return newton_periodic(guess, period, true, cfg, c, tol, max_iter);
}

namespace {

std::optional<PeriodicOrbit> newton_periodic(const Vec6& guess, double period_guess,
                                             bool fixed_period, const IntegratorConfig& cfg,
                                             const CanonicalConstants& c, double tol,
                                             int max_iter) {
  if (!(period_guess > 0.0)) return std::nullopt;

  Vec6 s = guess;
  double period = period_guess;

  Mat6 monodromy = Mat6::Zero();
  double defect_norm = std::numeric_limits<double>::infinity();
  Vec6 best_s = s;
  double best_period = period;
  Mat6 best_monodromy = Mat6::Zero();
  double best_defect = std::numeric_limits<double>::infinity();

  const bool trace = std::getenv("CATGEN_TRACE") != nullptr;
  for (int iter = 0; iter < max_iter; ++iter) {
    StmResult stm;
    try {
      stm = propagate_with_stm(s, period, cfg, c);
    } catch (const sda::Error& e) {
      if (trace) std::fprintf(stderr, "    [corr] it %d propagate failed: %s\n", iter, e.what());
      return std::nullopt;
    }
    monodromy = stm.stm;
    const Vec6 defect = stm.state - s;
    defect_norm = defect.cwiseAbs().maxCoeff();
    if (trace) {
      std::fprintf(stderr, "    [corr] it %d T=%.9f defect=%.3e\n", iter, period, defect_norm);
    }
    if (defect_norm < best_defect) {
      best_defect = defect_norm;
      best_s = s;
      best_period = period;
      best_monodromy = monodromy;
    }
    if (defect_norm < tol) break;

    // Underdetermined Newton step on [Phi - I | f(sT)]; the minimum-norm
    // solution avoids sliding along the family tangent, so no explicit phase
    // condition is needed. With the period fixed the last column drops out.
    Eigen::Matrix<double, 7, 1> du = Eigen::Matrix<double, 7, 1>::Zero();
    if (fixed_period) {
      Eigen::CompleteOrthogonalDecomposition<Mat6> cod(Mat6(stm.stm - Mat6::Identity()));
      du.head<6>() = cod.solve(Eigen::Matrix<double, 6, 1>(-defect));
    } else {
      Eigen::Matrix<double, 6, 7> jac;
      jac.block<6, 6>(0, 0) = stm.stm - Mat6::Identity();
      jac.block<6, 1>(0, 6) = eom(stm.state, c);
      Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<double, 6, 7>> cod(jac);
      du = cod.solve(Eigen::Matrix<double, 6, 1>(-defect));
    }
    if (!du.allFinite()) return std::nullopt;

    // damp large steps; the families are forgiving but the seeds are coarse
    double alpha = 1.0;
    const double step_norm = du.head<6>().cwiseAbs().maxCoeff();
    if (step_norm > 0.1) alpha = 0.1 / step_norm;

    s += alpha * du.head<6>();
    period += alpha * du[6];
    if (!(period > 1e-4) || period > 20.0) return std::nullopt;
  }
  if (!(best_defect < tol)) return std::nullopt;

  PeriodicOrbit orbit;
  orbit.ic = best_s;
  orbit.period = best_period;
  orbit.monodromy = best_monodromy;
  orbit.stability_index = stability_index_of(best_monodromy);
  orbit.closure = best_defect;

  // primary-distance scan along one period
  const sda::Trajectory traj = sda::propagate(best_s, 0.0, best_period, cfg, c);
  double r1 = 1e300, r2 = 1e300;
  for (std::size_t i = 0; i < traj.node_count(); ++i) {
    const auto d = sda::primary_distances(traj.node_state(i), c);
    r1 = std::min(r1, d.r1);
    r2 = std::min(r2, d.r2);
  }
  orbit.min_r1 = r1;
  orbit.min_r2 = r2;
  return orbit;
}

}  // namespace

}  // namespace catgen
