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

#include "sda/integrate.hpp"

using namespace sda;

namespace {

const CanonicalConstants kC;
const IntegratorConfig kCfg;

Vec6 make_state(double x, double y, double z, double vx, double vy, double vz) {
  Vec6 s;
  s << x, y, z, vx, vy, vz;
  return s;
}

// a mid-size DRO; closure is not assumed here, only smooth dynamics
const Vec6 kDro = make_state(0.94147, 0.77868, 0, 0.58313, -0.17725, 0);
// a transfer state sitting exactly on the yz-plane
const Vec6 kTransfer = make_state(0, -0.28642, 0.03740, 1.93948, -0.26854, -0.32641);

}  // namespace

TEST_CASE("zero-duration span returns the initial state exactly") {
  const Trajectory traj = propagate(kDro, 0.0, 0.0, kCfg, kC);
  CHECK(traj.final_state() == kDro);
  CHECK(traj.at(0.0) == kDro);
}

TEST_CASE("forward-then-backward returns to the start within 1e-8") {
  const Vec6 fwd = propagate_state(kDro, 0.0, 3.7, kCfg, kC);
  const Vec6 back = propagate_state(fwd, 3.7, 0.0, kCfg, kC);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(back[i] - kDro[i]) < 1e-8);
}

TEST_CASE("Jacobi constant drifts less than 1e-9 over 8 TU") {
  for (const Vec6& s0 : {kDro, kTransfer}) {
    const double c0 = jacobi_constant(s0, kC);
    const Vec6 s1 = propagate_state(s0, 0.0, 8.0, kCfg, kC);
    CHECK(std::abs(jacobi_constant(s1, kC) - c0) < 1e-9);
  }
}

TEST_CASE("planar states remain planar") {
  const Vec6 s0 = make_state(0.98707, 0.01970, 0, 0.80343, 0.03198, 0);
  const Trajectory traj = propagate(s0, 0.0, 6.0, kCfg, kC);
  for (std::size_t i = 0; i < traj.node_count(); ++i) {
    CHECK(std::abs(traj.node_state(i)[2]) < 1e-12);
    CHECK(std::abs(traj.node_state(i)[5]) < 1e-12);
  }
}

TEST_CASE("dense sampler agrees with direct propagation") {
  const Trajectory traj = propagate(kDro, 0.0, 2.0, kCfg, kC);
  for (double t : {0.3, 0.77, 1.21, 1.9}) {
    const Vec6 direct = propagate_state(kDro, 0.0, t, kCfg, kC);
    const Vec6 sampled = traj.at(t);
    CHECK((sampled - direct).cwiseAbs().maxCoeff() < 1e-6);
  }
  // endpoints are node-exact
  CHECK((traj.at(2.0) - traj.final_state()).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(traj.at(2.5), Error);
}

TEST_CASE("backward propagation supported directly") {
  const Vec6 back = propagate_state(kDro, 0.0, -1.5, kCfg, kC);
  const Vec6 again = propagate_state(back, -1.5, 0.0, kCfg, kC);
  CHECK((again - kDro).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("plane crossing: seed already on the plane returns immediately") {
  const PlaneCrossing pc = propagate_to_plane_crossing(kTransfer, true, 10.0, kCfg, kC);
  CHECK(pc.crossing_time == 0.0);
  CHECK(pc.state == kTransfer);
}

TEST_CASE("plane crossing found by event bisection") {
  // walk the transfer state off the plane, then ask for the crossing back
  const Vec6 off = propagate_state(kTransfer, 0.0, 0.11, kCfg, kC);
  REQUIRE(std::abs(off[0]) > 1e-3);
  const PlaneCrossing pc = propagate_to_plane_crossing(off, true, 1.0, kCfg, kC);
  CHECK(std::abs(pc.state[0]) < 1e-10);
  CHECK(pc.crossing_time < 0.0);
  CHECK(pc.crossing_time == doctest::Approx(-0.11).epsilon(1e-6));

  // round trip: forward-propagating the crossing state for |crossing-time|
  // reproduces the seed
  const Vec6 forward = propagate_state(pc.state, 0.0, -pc.crossing_time, kCfg, kC);
  CHECK((forward - off).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("plane crossing errors when the horizon is exhausted") {
  // a DRO around the Moon never reaches the yz-plane in a short horizon
  CHECK_THROWS_AS(propagate_to_plane_crossing(kDro, true, 0.5, kCfg, kC), Error);
}

TEST_CASE("non-finite spans and states are rejected") {
  CHECK_THROWS_AS(propagate_state(kDro, 0.0, std::nan(""), kCfg, kC), Error);
  Vec6 bad = kDro;
  bad[2] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(propagate_state(bad, 0.0, 1.0, kCfg, kC), Error);
}
