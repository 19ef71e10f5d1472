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

#ifndef SDA_CONFIG_HPP
#define SDA_CONFIG_HPP

#include <string>
#include <vector>

#include "sda/constants.hpp"
#include "sda/integrate.hpp"

namespace sda {

// Experiment manifest. Flat [run]/[sensor]/[integrator]/[ga]/[report]
// sections in a TOML file; every key can also be overridden individually
// with dotted-key syntax ("sensor.fidelity"). SDA_SEED in the environment
// overrides run.seed.
struct RunConfig {
  // [run]
  std::string catalog;
  std::string slots;          // pre-generated slot file; overrides catalog-derived slots
  std::string targets;
  std::string constellation;
  std::string output_dir = "out";
  std::string procedure = "stp-a";
  std::string stp;            // row filter for constellation files; defaults to procedure
  std::string target_id;
  std::string sigma_targets = "best-worst";  // comma list of ids, "best-worst", or "none"
  int n_observers = 4;
  double horizon_tu = 8.0;
  double sigma_dyn = 1e-5;
  int slots_per_orbit = 5;
  double si_max = 1.3;
  double period_max_tu = 6.28;
  uint64_t seed = 1;
  int seeds = 1;
  int threads = 0;  // 0: available parallelism
  double init_perturbation_scale = 1.0;
  bool include_transfers = true;
  bool verify_catalog = false;
  bool random_phase = true;
  double failure_penalty_km = 1e4;
  double dro_split_tu = 3.75;
  int subsample = 0;  // 0: full target set

  // [sensor]
  std::string fidelity = "low";      // low: 192.0118", high: 26.7518"
  double sigma_angle_arcsec = -1.0;  // >= 0 overrides the fidelity preset
  double max_range_km = 500000.0;
  double individual_cadence_tu = 0.02;

  // [integrator]
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double max_step_tu = 0.5;

  // [ga]
  int population = 50;
  double crossover_fraction = 0.8;
  int max_generations = 0;  // 0: 100 * number of slots
  int stall_generations = 50;
  double stall_tolerance_km = 1e-6;
  int elite_count = 0;  // 0: ceil(0.05 * population)
  std::string checkpoint_dir;
  std::string resume_from;
  bool exhaustive_check = false;
  uint64_t exhaustive_cap = 100000;

  // [report]
  std::string results_dir;  // defaults to output_dir
  std::vector<double> hist_edges_km;
  std::vector<std::string> hist_groups;  // "L1NHO+L1SHO" style labels

  CanonicalConstants constants;  // fixed Earth-Moon values

  double sigma_angle_rad() const;
  IntegratorConfig integrator() const;
};

RunConfig load_config(const std::string& toml_path);

// Dotted-key override, e.g. set_config_value(cfg, "ga.population", "80").
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);
std::string get_config_value(const RunConfig& cfg, const std::string& key);

// Applies the SDA_SEED environment override, if present.
void apply_env_overrides(RunConfig& cfg);

}  // namespace sda

#endif  // SDA_CONFIG_HPP
