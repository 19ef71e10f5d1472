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
#include <map>

#include "sda/constants.hpp"
#include "sda/tasking.hpp"

using namespace sda;

TEST_CASE("system cadences for four observers") {
  CHECK(build_schedule(Procedure::StpA, 4, 0.02).system_cadence() == doctest::Approx(0.02));
  CHECK(build_schedule(Procedure::StpB, 4, 0.02).system_cadence() == doctest::Approx(0.005));
  CHECK(build_schedule(Procedure::StpC, 4, 0.02).system_cadence() == doctest::Approx(0.01));
  CHECK(build_schedule(Procedure::Baseline, 1, 0.02).system_cadence() == doctest::Approx(0.02));

  // 0.02 TU in minutes
  const CanonicalConstants c;
  const double minutes = 0.02 * c.tu_s / 60.0;
  CHECK(std::abs(minutes - 127.7) < 0.1);
}

TEST_CASE("epoch counts over the 8 TU horizon") {
  CHECK(build_schedule(Procedure::StpA, 4, 0.02).epoch_count(8.0) == 400);
  CHECK(build_schedule(Procedure::StpB, 4, 0.02).epoch_count(8.0) == 1600);
  CHECK(build_schedule(Procedure::StpC, 4, 0.02).epoch_count(8.0) == 800);

  const auto times = epochs(build_schedule(Procedure::StpA, 4, 0.02), 8.0);
  CHECK(times.size() == 400);
  CHECK(times.front() == doctest::Approx(0.02));
  CHECK(times.back() == doctest::Approx(8.0));
}

TEST_CASE("sequential pattern of stp-b") {
  const auto s = build_schedule(Procedure::StpB, 4, 0.02);
  std::vector<int> seen;
  for (int k = 1; k <= 8; ++k) {
    const auto t = s.tasked(k);
    REQUIRE(t.size() == 1);
    seen.push_back(t[0]);
  }
  CHECK(seen == std::vector<int>{0, 1, 2, 3, 0, 1, 2, 3});
}

TEST_CASE("stp-a tasks everyone, stp-c alternates the two groups") {
  const auto a = build_schedule(Procedure::StpA, 4, 0.02);
  CHECK(a.tasked(1) == std::vector<int>{0, 1, 2, 3});
  CHECK(a.tasked(17) == std::vector<int>{0, 1, 2, 3});

  const auto c = build_schedule(Procedure::StpC, 4, 0.02);
  CHECK(c.tasked(1) == std::vector<int>{0, 1});
  CHECK(c.tasked(2) == std::vector<int>{2, 3});
  CHECK(c.tasked(3) == std::vector<int>{0, 1});

  // odd split puts the extra observer in the first group
  const auto c5 = build_schedule(Procedure::StpC, 5, 0.02);
  CHECK(c5.tasked(1) == std::vector<int>{0, 1, 2});
  CHECK(c5.tasked(2) == std::vector<int>{3, 4});

  // explicit group override
  const std::vector<std::vector<int>> groups = {{0, 3}, {1, 2}};
  const auto custom = build_schedule(Procedure::StpC, 4, 0.02, groups);
  CHECK(custom.tasked(1) == std::vector<int>{0, 3});
  CHECK(custom.tasked(2) == std::vector<int>{1, 2});
  const std::vector<std::vector<int>> bad = {{0, 1}, {1, 2}};
  CHECK_THROWS_AS(build_schedule(Procedure::StpC, 4, 0.02, bad), Error);
}

TEST_CASE("per-observer duty spacing equals the individual cadence") {
  const double cadence = 0.02;
  for (Procedure p : {Procedure::StpA, Procedure::StpB, Procedure::StpC}) {
    const int n = 4;
    const auto s = build_schedule(p, n, cadence);
    std::map<int, std::vector<double>> duty;
    const int epochs_total = s.epoch_count(2.0);
    for (int k = 1; k <= epochs_total; ++k) {
      for (int oi : s.tasked(k)) duty[oi].push_back(k * s.system_cadence());
    }
    CHECK(duty.size() == static_cast<std::size_t>(n));
    for (const auto& [oi, times] : duty) {
      for (std::size_t i = 1; i < times.size(); ++i) {
        CHECK(times[i] - times[i - 1] == doctest::Approx(cadence).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_schedule(Procedure::Baseline, 2, 0.02), Error);
  CHECK_THROWS_AS(build_schedule(Procedure::StpC, 1, 0.02), Error);
  CHECK_THROWS_AS(build_schedule(Procedure::StpA, 0, 0.02), Error);
  CHECK_THROWS_AS(build_schedule(Procedure::StpA, 4, -1.0), Error);
  CHECK_THROWS_AS(build_schedule(Procedure::StpA, 4, 0.02).tasked(0), Error);
  CHECK_THROWS_AS(build_schedule(Procedure::StpA, 4, 0.02).epoch_count(-1.0), Error);
}

TEST_CASE("procedure labels round-trip") {
  for (Procedure p : {Procedure::Baseline, Procedure::StpA, Procedure::StpB, Procedure::StpC}) {
    CHECK(procedure_from_label(procedure_label(p)) == p);
  }
  CHECK_THROWS_AS(procedure_from_label("stp-x"), Error);
}
