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

#ifndef SDA_WORKFLOWS_HPP
#define SDA_WORKFLOWS_HPP

#include <iosfwd>

#include "sda/config.hpp"
#include "sda/harness.hpp"

namespace sda {

// The five command workflows. Each reads inputs named by the config, writes
// its file products under run.output_dir, and logs progress lines to `log`
// when given. All outputs are deterministic for a fixed config and seed;
// wall-clock metadata goes to the run_meta.json sidecar only.

void run_catalog_workflow(const RunConfig& cfg, std::ostream* log = nullptr);
void run_track_workflow(const RunConfig& cfg, std::ostream* log = nullptr);
void run_optimize_workflow(const RunConfig& cfg, std::ostream* log = nullptr);
void run_validate_workflow(const RunConfig& cfg, std::ostream* log = nullptr);
void run_report_workflow(const RunConfig& cfg, std::ostream* log = nullptr);

// Shared helpers, exposed for tests.

ScenarioConfig make_scenario(const RunConfig& cfg);

struct ConstellationRow {
  std::string stp;
  Family family = Family::DRO;
  std::optional<double> period;
  Vec6 state = Vec6::Zero();
};

// Reads a constellation file (header stp,family,period_tu,x,y,z,vx,vy,vz)
// and returns the rows whose stp token matches.
std::vector<ConstellationRow> load_constellation(const std::string& path,
                                                 const std::string& stp_token);

// Deterministic stratified subsample: per-family proportional allocation,
// evenly spaced picks along each family's period-sorted members.
std::vector<OrbitRecord> stratified_subsample(const std::vector<OrbitRecord>& records,
                                              int sample_size);

}  // namespace sda

#endif  // SDA_WORKFLOWS_HPP
