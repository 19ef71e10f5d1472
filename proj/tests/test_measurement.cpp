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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sda/measurement.hpp"
#include "sda/errors.hpp"

using namespace sda;

namespace {

const CanonicalConstants kC;

Vec6 state_at(double x, double y, double z) {
  Vec6 s = Vec6::Zero();
  s[0] = x;
  s[1] = y;
  s[2] = z;
  return s;
}

RelativeGeometry geom_of(const Vec3& gamma, const Vec3& rho) {
  RelativeGeometry g;
  g.gamma = gamma;
  g.rho = rho;
  return g;
}

// the brute-force line-of-sight oracle: the ray from the observer toward the
// target must not pass through a body's disk ahead of the observer
bool visible_oracle(const Vec6& obs, const Vec6& tgt, const SensorSpec& sensor,
                    const std::array<PrimaryBody, 2>& bodies) {
  const Vec3 rho = position(tgt) - position(obs);
  const double range = rho.norm();
  if (range > sensor.max_range) return false;
  const Vec3 dir = rho / range;
  for (const auto& body : bodies) {
    const Vec3 to_body = body.center - position(obs);
    const double along = to_body.dot(dir);
    if (along <= 0.0) continue;  // body behind the observer
    const double miss = (to_body - along * dir).norm();
    if (miss < body.radius) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("relative geometry") {
  const auto g = relative_geometry(state_at(0.5, 0, 0), state_at(0.7, 0.1, 0), kC.mu);
  CHECK(g.gamma[0] == doctest::Approx(0.4878494).epsilon(1e-14));
  CHECK(g.gamma[1] == 0.0);
  CHECK(g.rho[0] == doctest::Approx(0.2).epsilon(1e-14));

  // degenerate cases produce zero vectors, flagged downstream
  const auto same = relative_geometry(state_at(0.5, 0, 0), state_at(0.5, 0, 0), kC.mu);
  CHECK(same.rho.norm() == 0.0);
  const auto at_moon = relative_geometry(state_at(1.0 - kC.mu, 0, 0), state_at(0.5, 0, 0), kC.mu);
  CHECK(at_moon.gamma.norm() == 0.0);
}

TEST_CASE("angle measurements") {
  // parallel: both angles zero
  const auto m0 = measure(geom_of(Vec3(1, 0.3, 0.2), Vec3(2, 0.6, 0.4)));
  CHECK(m0[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(m0[1] == doctest::Approx(0.0).epsilon(1e-9));

  // antiparallel in both projection planes
  const auto mpi = measure(geom_of(Vec3(1, 0.5, 0.25), Vec3(-2, -1.0, -0.5)));
  CHECK(mpi[0] == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(mpi[1] == doctest::Approx(M_PI).epsilon(1e-12));

  // planar trigonometry check
  const auto m45 = measure(geom_of(Vec3(1, 0, 0), Vec3(M_SQRT1_2, M_SQRT1_2, 0)));
  CHECK(m45[0] == doctest::Approx(M_PI / 4).epsilon(1e-12));
  CHECK(m45[1] == doctest::Approx(0.0).epsilon(1e-12));

  // vanishing projection is an error
  CHECK_THROWS_AS(measure(geom_of(Vec3(0, 0, 1), Vec3(1, 0, 0))), Error);
}

TEST_CASE("measurement Jacobian: structure and finite differences") {
  Rng rng(2024);
  const double fd_step = 1e-7;
  int tested = 0;
  while (tested < 100) {
    Vec3 gamma, rho;
    for (int i = 0; i < 3; ++i) {
      gamma[i] = 2.0 * rng.uniform01() - 1.0;
      rho[i] = 2.0 * rng.uniform01() - 1.0;
    }
    const auto g = geom_of(gamma, rho);
    Vec2 angles;
    try {
      angles = measure(g);
    } catch (const Error&) {
      continue;
    }
    // keep clear of the arccos singularities for the FD comparison
    if (std::min({angles[0], M_PI - angles[0], angles[1], M_PI - angles[1]}) < 0.05) continue;

    const auto h = measurement_jacobian(g);
    // velocity columns identically zero
    CHECK(h.block<2, 3>(0, 3).isZero(0.0));

    Eigen::Matrix<double, 2, 3> fd;
    for (int j = 0; j < 3; ++j) {
      Vec3 rp = rho, rm = rho;
      rp[j] += fd_step;
      rm[j] -= fd_step;
      fd.col(j) = (measure(geom_of(gamma, rp)) - measure(geom_of(gamma, rm))) / (2 * fd_step);
    }
    const double scale = std::max(1e-12, h.block<2, 3>(0, 0).cwiseAbs().maxCoeff());
    CHECK((h.block<2, 3>(0, 0) - fd).cwiseAbs().maxCoeff() / scale < 1e-6);
    ++tested;
  }
}

TEST_CASE("measurement Jacobian near the planar limit matches the analytic derivative") {
  // all z = 0 except a small target offset; the elevation row reduces to the
  // derivative of arctan(rho_z / rho_x)
  const double rho_x = 0.8, rho_z = 1e-6;
  const auto g = geom_of(Vec3(1.2, 0.4, 0.0), Vec3(rho_x, -0.3, rho_z));
  const auto h = measurement_jacobian(g);
  CHECK(h(1, 1) == 0.0);  // elevation ignores rho_y
  CHECK(h(1, 2) == doctest::Approx(rho_x / (rho_x * rho_x + rho_z * rho_z)).epsilon(1e-6));
  CHECK(h(1, 0) == doctest::Approx(-rho_z / (rho_x * rho_x + rho_z * rho_z)).epsilon(1e-6));

  // exactly planar geometry is singular for the Jacobian
  CHECK_THROWS_AS(measurement_jacobian(geom_of(Vec3(1.2, 0.4, 0), Vec3(0.8, -0.3, 0))), Error);
}

TEST_CASE("exclusion angles") {
  const auto moon = moon_body(kC);

  // observer-body-target collinear, body between: theta = 0
  Vec6 obs = state_at(moon.center[0] - 0.2, 0, 0);
  Vec6 tgt = state_at(moon.center[0] + 0.3, 0, 0);
  const auto ex = exclusion_angles(obs, tgt, moon);
  CHECK(ex.theta == doctest::Approx(0.0).epsilon(1e-12));

  // the printed arctan form equals arcsin(r/gamma) across the whole range
  for (double ratio : {1.001, 1.01, 1.5, 2.0, 10.0, 100.0, 1e4}) {
    const double gp = moon.radius * ratio;
    Vec6 o = state_at(moon.center[0] - gp, 0, 0);
    const auto e = exclusion_angles(o, tgt, moon);
    CHECK(std::abs(e.omega - std::asin(moon.radius / gp)) < 1e-12);
  }

  // grazing limit: omega -> pi/2
  Vec6 close = state_at(moon.center[0] - moon.radius * (1.0 + 1e-9), 0, 0);
  CHECK(exclusion_angles(close, tgt, moon).omega > 1.5707);

  // inside the body is an error
  Vec6 inside = state_at(moon.center[0] + moon.radius * 0.5, 0, 0);
  CHECK_THROWS_AS(exclusion_angles(inside, tgt, moon), Error);
}

TEST_CASE("visibility boundaries") {
  const auto bodies = occluding_bodies(kC);
  const auto sensor = SensorSpec::for_fidelity(Fidelity::Low, kC);

  // exactly at max range: visible (inclusive)
  Vec6 obs = state_at(0.48, 0.9, 0.2);
  Vec6 tgt = obs;
  tgt[0] += sensor.max_range;
  CHECK(visibility(obs, tgt, sensor, bodies, kC.mu));
  tgt[0] += 1e-9;
  CHECK_FALSE(visibility(obs, tgt, sensor, bodies, kC.mu));

  // just behind the lunar limb along the observer-Moon line
  const auto moon = moon_body(kC);
  Vec6 o = state_at(moon.center[0] - 0.1, 0, 0);
  Vec6 behind = state_at(moon.center[0] + 1e-3, 0, 0);
  CHECK_FALSE(visibility(o, behind, sensor, bodies, kC.mu));

  // degenerate: target on the observer
  CHECK_FALSE(visibility(o, o, sensor, bodies, kC.mu));
}

TEST_CASE("visibility agrees with the line-of-sight oracle on random geometries") {
  const auto bodies = occluding_bodies(kC);
  const auto sensor = SensorSpec::for_fidelity(Fidelity::Low, kC);
  Rng rng(777);
  int disagreements = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    Vec6 obs = Vec6::Zero(), tgt = Vec6::Zero();
    for (int i = 0; i < 3; ++i) {
      obs[i] = 3.0 * rng.uniform01() - 1.5;
      tgt[i] = 3.0 * rng.uniform01() - 1.5;
    }
    // skip observers inside a body (precondition) and coincident pairs
    bool skip = (position(obs) - position(tgt)).norm() < 1e-9;
    for (const auto& b : bodies) {
      if ((position(obs) - b.center).norm() <= b.radius * 1.01) skip = true;
    }
    if (skip) continue;
    const bool via_angles = visibility(obs, tgt, sensor, bodies, kC.mu);
    const bool via_oracle = visible_oracle(obs, tgt, sensor, bodies);
    if (via_angles != via_oracle) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("synthesized measurements") {
  const auto g = geom_of(Vec3(1, 0.2, 0.1), Vec3(0.5, 0.4, 0.3));
  SensorSpec sensor = SensorSpec::for_fidelity(Fidelity::Low, kC);

  // zero noise reproduces measure() exactly
  SensorSpec noiseless = sensor;
  noiseless.sigma_angle = 0.0;
  Rng rng0(5);
  CHECK(synthesize_measurement(g, noiseless, rng0) == measure(g));

  // same seed, same draw
  Rng a(42), b(42);
  CHECK(synthesize_measurement(g, sensor, a) == synthesize_measurement(g, sensor, b));

  // the noise is zero-mean: the sample mean stays within 5 sigma / sqrt(n)
  const int n = 100000;
  Rng rng(99);
  double sum = 0.0;
  const Vec2 clean = measure(g);
  for (int i = 0; i < n; ++i) {
    const Vec2 noisy = synthesize_measurement(g, sensor, rng);
    sum += (noisy[0] - clean[0]) + (noisy[1] - clean[1]);
  }
  const double mean = sum / (2 * n);
  CHECK(std::abs(mean) < 5.0 * sensor.sigma_angle / std::sqrt(2.0 * n));
}

TEST_CASE("sensor presets") {
  const auto low = SensorSpec::for_fidelity(Fidelity::Low, kC);
  const auto high = SensorSpec::for_fidelity(Fidelity::High, kC);
  CHECK(low.sigma_angle == doctest::Approx(9.30899475744680e-4).epsilon(1e-12));
  CHECK(high.sigma_angle == doctest::Approx(1.29696386343061e-4).epsilon(1e-12));
  CHECK(low.max_range == doctest::Approx(500000.0 / 389703.0).epsilon(1e-14));
  CHECK(low.individual_cadence == 0.02);
}

TEST_CASE("visibility is directional") {
  const auto bodies = occluding_bodies(kC);
  const auto sensor = SensorSpec::for_fidelity(Fidelity::Low, kC);
  const auto moon = moon_body(kC);
  // the target sits between the observer and the Moon, angularly inside the
  // lunar disk: excluded one way, wide open the other way
  Vec6 observer = state_at(moon.center[0], moon.center[1] + 0.5, 0);
  Vec6 target = state_at(moon.center[0], moon.center[1] + 0.25, 0.0005);
  CHECK_FALSE(visibility(observer, target, sensor, bodies, kC.mu));
  CHECK(visibility(target, observer, sensor, bodies, kC.mu));
}
