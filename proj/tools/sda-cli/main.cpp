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

// Command-line front end. Talks to the toolkit exclusively through the C API
// so it doubles as a living example of embedding the shared library.

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "sda/sda_c.h"

namespace {

struct ConfigDeleter {
  void operator()(sda_config* c) const { sda_config_free(c); }
};
using ConfigPtr = std::unique_ptr<sda_config, ConfigDeleter>;

// key/value overrides collected from CLI flags, applied in order
using Overrides = std::vector<std::pair<std::string, std::string>>;

int fail(sda_status status) {
  std::fprintf(stderr, "error: %s\n", sda_last_error());
  return static_cast<int>(status);
}

int run_command(const std::string& config_path, const Overrides& overrides,
                sda_status (*runner)(const sda_config*, int), bool quiet) {
  ConfigPtr cfg(sda_config_new());
  if (!config_path.empty()) {
    if (sda_status s = sda_config_load(cfg.get(), config_path.c_str()); s != SDA_OK) {
      return fail(s);
    }
  }
  for (const auto& [key, value] : overrides) {
    if (sda_status s = sda_config_set(cfg.get(), key.c_str(), value.c_str()); s != SDA_OK) {
      return fail(s);
    }
  }
  if (sda_status s = runner(cfg.get(), quiet ? 0 : 1); s != SDA_OK) {
    return fail(s);
  }
  return 0;
}

// binds a CLI option to a config key override
void bind_opt(CLI::App* cmd, Overrides& ov, const std::string& flag, const std::string& key,
          const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&ov, key](const std::string& v) { ov.emplace_back(key, v); }, help);
}

void bind_flag(CLI::App* cmd, Overrides& ov, const std::string& flag, const std::string& key,
               const std::string& help) {
  cmd->add_flag_function(
      flag,
      [&ov, key](std::int64_t count) { ov.emplace_back(key, count > 0 ? "true" : "false"); },
      help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cislunar SDA constellation design and analysis toolkit"};
  app.set_version_flag("--version", std::string(sda_version()));
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path;
  bool quiet = false;
  app.add_option("--config", config_path, "TOML experiment manifest")->envname("SDA_CONFIG");
  app.add_flag("--quiet", quiet, "suppress progress output");

  Overrides ov;
  // options shared by every subcommand
  auto add_common = [&](CLI::App* cmd) {
    bind_opt(cmd, ov, "--output-dir", "run.output_dir", "output directory");
    bind_opt(cmd, ov, "--seed", "run.seed", "global seed");
    bind_opt(cmd, ov, "--threads", "run.threads", "worker thread cap");
    cmd->add_option_function<std::vector<std::string>>(
        "--set",
        [&ov](const std::vector<std::string>& kvs) {
          for (const auto& kv : kvs) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
              throw CLI::ValidationError("--set expects key=value");
            }
            ov.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
          }
        },
        "generic key=value config override (repeatable)");
  };

  auto* catalog = app.add_subcommand("catalog", "filter a catalog and generate observer slots");
  bind_opt(catalog, ov, "--catalog", "run.catalog", "catalog CSV");
  bind_opt(catalog, ov, "--si-max", "run.si_max", "stability index cap");
  bind_opt(catalog, ov, "--period-max", "run.period_max_tu", "period cap, TU");
  bind_opt(catalog, ov, "--slots-per-orbit", "run.slots_per_orbit", "phased slots per orbit");
  bind_flag(catalog, ov, "--include-transfers,!--no-transfers", "run.include_transfers",
            "keep transfer records");
  bind_flag(catalog, ov, "--verify", "run.verify_catalog", "run the periodicity check");
  add_common(catalog);

  auto* track = app.add_subcommand("track", "track one target with a constellation");
  bind_opt(track, ov, "--targets", "run.targets", "targets CSV (catalog schema)");
  bind_opt(track, ov, "--target-id", "run.target_id", "row to track");
  bind_opt(track, ov, "--constellation", "run.constellation", "constellation CSV");
  bind_opt(track, ov, "--stp", "run.stp", "constellation row token (baseline|stp-a|stp-b|stp-c)");
  bind_opt(track, ov, "--procedure", "run.procedure", "tasking procedure");
  bind_opt(track, ov, "--seeds", "run.seeds", "number of seeded replicates");
  bind_opt(track, ov, "--fidelity", "sensor.fidelity", "sensor fidelity (low|high)");
  bind_opt(track, ov, "--sigma-angle", "sensor.sigma_angle_arcsec", "angle noise, arcsec");
  bind_opt(track, ov, "--init-error", "run.init_perturbation_scale", "initial estimate error scale");
  bind_opt(track, ov, "--horizon", "run.horizon_tu", "simulation horizon, TU");
  bind_flag(track, ov, "--random-phase,!--no-random-phase", "run.random_phase",
            "randomize the target phase");
  add_common(track);

  auto* optimize = app.add_subcommand("optimize", "optimize observer placement");
  bind_opt(optimize, ov, "--catalog", "run.catalog", "catalog CSV for slot candidates");
  bind_opt(optimize, ov, "--slots", "run.slots", "pre-generated slots CSV");
  bind_opt(optimize, ov, "--targets", "run.targets", "optimization target set CSV");
  bind_opt(optimize, ov, "--n", "run.n_observers", "number of observers");
  bind_opt(optimize, ov, "--procedure", "run.procedure", "tasking procedure");
  bind_opt(optimize, ov, "--fidelity", "sensor.fidelity", "sensor fidelity");
  bind_opt(optimize, ov, "--population", "ga.population", "GA population size");
  bind_opt(optimize, ov, "--max-generations", "ga.max_generations", "generation cap");
  bind_opt(optimize, ov, "--checkpoint-dir", "ga.checkpoint_dir", "checkpoint directory");
  bind_opt(optimize, ov, "--resume", "ga.resume_from", "resume from a checkpoint JSON");
  bind_opt(optimize, ov, "--init-error", "run.init_perturbation_scale", "initial estimate error scale");
  bind_flag(optimize, ov, "--exhaustive-check", "ga.exhaustive_check",
            "also run the exhaustive oracle");
  add_common(optimize);

  auto* validate = app.add_subcommand("validate", "run a constellation against a target set");
  bind_opt(validate, ov, "--targets", "run.targets", "validation target set CSV");
  bind_opt(validate, ov, "--constellation", "run.constellation", "constellation CSV");
  bind_opt(validate, ov, "--stp", "run.stp", "constellation row token");
  bind_opt(validate, ov, "--procedure", "run.procedure", "tasking procedure");
  bind_opt(validate, ov, "--fidelity", "sensor.fidelity", "sensor fidelity");
  bind_opt(validate, ov, "--subsample", "run.subsample", "stratified subsample size");
  bind_opt(validate, ov, "--sigma-targets", "run.sigma_targets",
       "sigma series selection (best-worst|none|id,id,...)");
  bind_opt(validate, ov, "--init-error", "run.init_perturbation_scale", "initial estimate error scale");
  add_common(validate);

  auto* report = app.add_subcommand("report", "aggregate a completed validation");
  bind_opt(report, ov, "--results", "report.results_dir", "directory with per_target.csv");
  bind_opt(report, ov, "--dro-split", "run.dro_split_tu", "DRO period split, TU");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a configuration error
  }

  if (catalog->parsed()) return run_command(config_path, ov, sda_run_catalog, quiet);
  if (track->parsed()) return run_command(config_path, ov, sda_run_track, quiet);
  if (optimize->parsed()) return run_command(config_path, ov, sda_run_optimize, quiet);
  if (validate->parsed()) return run_command(config_path, ov, sda_run_validate, quiet);
  if (report->parsed()) return run_command(config_path, ov, sda_run_report, quiet);
  return 0;
}
