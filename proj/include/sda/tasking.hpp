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

#ifndef SDA_TASKING_HPP
#define SDA_TASKING_HPP

#include <optional>
#include <string>
#include <vector>

#include "sda/errors.hpp"

namespace sda {

enum class Procedure { Baseline, StpA, StpB, StpC };

const char* procedure_label(Procedure p);
Procedure procedure_from_label(const std::string& label);  // baseline|stp-a|stp-b|stp-c

// Per-epoch observer duty assignment. Epochs are 1-based: the first
// measurement epoch is t = system_cadence, never t = 0.
class TaskingSchedule {
 public:
  Procedure procedure() const { return procedure_; }
  int n_observers() const { return n_observers_; }
  double individual_cadence() const { return individual_cadence_; }
  double system_cadence() const { return system_cadence_; }

  // observer indices on duty at epoch k (k >= 1)
  std::vector<int> tasked(int k) const;

  int epoch_count(double horizon) const;
  std::vector<double> epoch_times(double horizon) const;

  friend TaskingSchedule build_schedule(Procedure, int, double,
                                        const std::optional<std::vector<std::vector<int>>>&);

 private:
  Procedure procedure_ = Procedure::Baseline;
  int n_observers_ = 1;
  double individual_cadence_ = 0.0;
  double system_cadence_ = 0.0;
  std::vector<int> group1_, group2_;  // STP-C only
};

// STP-A tasks all observers in unison each individual cadence; STP-B tasks
// one observer per epoch, sequentially, at individual_cadence / N; STP-C
// alternates two groups at individual_cadence / 2. The STP-C split defaults
// to the first ceil(N/2) indices versus the rest.
TaskingSchedule build_schedule(
    Procedure procedure, int n_observers, double individual_cadence,
    const std::optional<std::vector<std::vector<int>>>& stpc_groups = std::nullopt);

std::vector<double> epochs(const TaskingSchedule& schedule, double horizon);

}  // namespace sda

#endif  // SDA_TASKING_HPP
