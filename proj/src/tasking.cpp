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

#include "sda/tasking.hpp"

#include <algorithm>
#include <cmath>

namespace sda {

const char* procedure_label(Procedure p) {
  switch (p) {
    case Procedure::Baseline: return "baseline";
    case Procedure::StpA: return "stp-a";
    case Procedure::StpB: return "stp-b";
    case Procedure::StpC: return "stp-c";
  }
  throw config_error("unknown procedure enum value");
}

Procedure procedure_from_label(const std::string& label) {
  if (label == "baseline") return Procedure::Baseline;
  if (label == "stp-a") return Procedure::StpA;
  if (label == "stp-b") return Procedure::StpB;
  if (label == "stp-c") return Procedure::StpC;
  throw config_error("unknown tasking procedure: '" + label +
                     "' (expected baseline|stp-a|stp-b|stp-c)");
}

std::vector<int> TaskingSchedule::tasked(int k) const {
  if (k < 1) throw config_error("epoch index must be >= 1");
  switch (procedure_) {
    case Procedure::Baseline:
      return {0};
    case Procedure::StpA: {
      std::vector<int> all(n_observers_);
      for (int i = 0; i < n_observers_; ++i) all[i] = i;
      return all;
    }
    case Procedure::StpB:
      return {(k - 1) % n_observers_};
    case Procedure::StpC:
      return (k % 2 == 1) ? group1_ : group2_;
  }
  throw config_error("unknown procedure enum value");
}

int TaskingSchedule::epoch_count(double horizon) const {
  if (!(horizon > 0.0)) throw config_error("horizon must be positive");
  return static_cast<int>(std::floor(horizon / system_cadence_ + 1e-9));
}

std::vector<double> TaskingSchedule::epoch_times(double horizon) const {
  const int n = epoch_count(horizon);
  std::vector<double> times(n);
  for (int k = 1; k <= n; ++k) times[k - 1] = k * system_cadence_;
  return times;
}

TaskingSchedule build_schedule(
    Procedure procedure, int n_observers, double individual_cadence,
    const std::optional<std::vector<std::vector<int>>>& stpc_groups) {
  if (n_observers < 1) throw config_error("need at least one observer");
  if (!(individual_cadence > 0.0)) throw config_error("individual cadence must be positive");
  if (procedure == Procedure::Baseline && n_observers != 1) {
    throw config_error("the baseline procedure uses exactly one observer");
  }
  if (procedure == Procedure::StpC && n_observers < 2) {
    throw config_error("stp-c needs at least two observers");
  }

  TaskingSchedule s;
  s.procedure_ = procedure;
  s.n_observers_ = n_observers;
  s.individual_cadence_ = individual_cadence;
  switch (procedure) {
    case Procedure::Baseline:
    case Procedure::StpA:
      s.system_cadence_ = individual_cadence;
      break;
    case Procedure::StpB:
      s.system_cadence_ = individual_cadence / n_observers;
      break;
    case Procedure::StpC:
      s.system_cadence_ = individual_cadence / 2.0;
      break;
  }

  if (procedure == Procedure::StpC) {
    if (stpc_groups) {
      if (stpc_groups->size() != 2) throw config_error("stp-c needs exactly two groups");
      s.group1_ = (*stpc_groups)[0];
      s.group2_ = (*stpc_groups)[1];
      std::vector<int> all = s.group1_;
      all.insert(all.end(), s.group2_.begin(), s.group2_.end());
      std::sort(all.begin(), all.end());
      for (int i = 0; i < n_observers; ++i) {
        if (i >= static_cast<int>(all.size()) || all[i] != i) {
          throw config_error("stp-c groups must partition the observer indices");
        }
      }
    } else {
      const int split = (n_observers + 1) / 2;
      for (int i = 0; i < split; ++i) s.group1_.push_back(i);
      for (int i = split; i < n_observers; ++i) s.group2_.push_back(i);
    }
  }
  return s;
}

std::vector<double> epochs(const TaskingSchedule& schedule, double horizon) {
  return schedule.epoch_times(horizon);
}

}  // namespace sda
