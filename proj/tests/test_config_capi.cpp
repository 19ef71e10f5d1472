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

#include <cstdlib>
#include <fstream>
#include <string>

#include "sda/config.hpp"
#include "sda/measurement.hpp"
#include "sda/sda_c.h"

using namespace sda;

namespace {

#ifndef SDA_DATA_DIR
#define SDA_DATA_DIR "data"
#endif
const std::string kDataDir = SDA_DATA_DIR;

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("experiment defaults match the reference setup") {
  RunConfig cfg;
  CHECK(cfg.n_observers == 4);
  CHECK(cfg.horizon_tu == 8.0);
  CHECK(cfg.sigma_dyn == 1e-5);
  CHECK(cfg.slots_per_orbit == 5);
  CHECK(cfg.si_max == 1.3);
  CHECK(cfg.period_max_tu == 6.28);
  CHECK(cfg.individual_cadence_tu == 0.02);
  CHECK(cfg.max_range_km == 500000.0);
  CHECK(cfg.population == 50);
  CHECK(cfg.crossover_fraction == 0.8);
  CHECK(cfg.stall_generations == 50);
  CHECK(cfg.abs_tol == 1e-12);
  CHECK(cfg.rel_tol == 1e-12);
  CHECK(cfg.init_perturbation_scale == 1.0);
  CHECK(cfg.sigma_angle_rad() == doctest::Approx(arcsec_to_rad(192.0118)).epsilon(1e-15));
  cfg.fidelity = "high";
  CHECK(cfg.sigma_angle_rad() == doctest::Approx(arcsec_to_rad(26.7518)).epsilon(1e-15));
  cfg.sigma_angle_arcsec = 10.0;
  CHECK(cfg.sigma_angle_rad() == doctest::Approx(arcsec_to_rad(10.0)).epsilon(1e-15));
}

TEST_CASE("toml manifest loading") {
  const std::string path = write_temp("sda_cfg.toml", R"(
# experiment manifest
[run]
catalog = "cat.csv"        # inline comment
procedure = "stp-b"
n_observers = 3
horizon_tu = 4.0
seed = 42
include_transfers = false

[sensor]
fidelity = "high"
max_range_km = 400000

[ga]
population = 20
crossover_fraction = 0.6

[report]
hist_edges_km = [0, 1, 10, 100]
hist_groups = ["DRO", "LPEO+LPWO"]
)");
  unsetenv("SDA_SEED");
  const RunConfig cfg = load_config(path);
  CHECK(cfg.catalog == "cat.csv");
  CHECK(cfg.procedure == "stp-b");
  CHECK(cfg.n_observers == 3);
  CHECK(cfg.horizon_tu == 4.0);
  CHECK(cfg.seed == 42);
  CHECK_FALSE(cfg.include_transfers);
  CHECK(cfg.fidelity == "high");
  CHECK(cfg.max_range_km == 400000.0);
  CHECK(cfg.population == 20);
  CHECK(cfg.crossover_fraction == 0.6);
  REQUIRE(cfg.hist_edges_km.size() == 4);
  CHECK(cfg.hist_edges_km[2] == 10.0);
  REQUIRE(cfg.hist_groups.size() == 2);
  CHECK(cfg.hist_groups[1] == "LPEO+LPWO");
}

TEST_CASE("config errors carry file and line") {
  const std::string bad = write_temp("sda_bad.toml", "[run]\nn_observers = pony\n");
  try {
    load_config(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  CHECK_THROWS_AS(load_config("/missing/config.toml"), Error);

  RunConfig cfg;
  CHECK_THROWS_AS(set_config_value(cfg, "run.unknown_key", "1"), Error);
  CHECK_THROWS_AS(set_config_value(cfg, "run.seeds", "not-a-number"), Error);
}

TEST_CASE("set/get round trip") {
  RunConfig cfg;
  set_config_value(cfg, "sensor.fidelity", "high");
  CHECK(get_config_value(cfg, "sensor.fidelity") == "high");
  set_config_value(cfg, "ga.population", "64");
  CHECK(cfg.population == 64);
  CHECK(get_config_value(cfg, "ga.population") == "64");
  set_config_value(cfg, "run.init_perturbation_scale", "10000");
  CHECK(cfg.init_perturbation_scale == 10000.0);
}

TEST_CASE("SDA_SEED overrides the configured seed") {
  const std::string path = write_temp("sda_seed.toml", "[run]\nseed = 7\n");
  setenv("SDA_SEED", "123456", 1);
  const RunConfig cfg = load_config(path);
  CHECK(cfg.seed == 123456);
  unsetenv("SDA_SEED");
  const RunConfig cfg2 = load_config(path);
  CHECK(cfg2.seed == 7);
}

TEST_CASE("c api: version and error reporting") {
  CHECK(std::string(sda_version()) == "1.0.0");
  sda_catalog* cat = nullptr;
  const sda_status s = sda_catalog_load("/missing/file.csv", &cat);
  CHECK(s == SDA_ERROR_CONFIG);
  CHECK(cat == nullptr);
  CHECK(std::string(sda_last_error()).find("/missing/file.csv") != std::string::npos);
}

TEST_CASE("c api: config handle") {
  sda_config* cfg = sda_config_new();
  REQUIRE(cfg != nullptr);

  CHECK(sda_config_set(cfg, "run.n_observers", "6") == SDA_OK);
  char buf[64];
  CHECK(sda_config_get(cfg, "run.n_observers", buf, sizeof(buf)) == SDA_OK);
  CHECK(std::string(buf) == "6");

  CHECK(sda_config_set(cfg, "bogus.key", "1") == SDA_ERROR_CONFIG);
  char tiny[2];
  CHECK(sda_config_set(cfg, "run.catalog", "some/long/path.csv") == SDA_OK);
  CHECK(sda_config_get(cfg, "run.catalog", tiny, sizeof(tiny)) == SDA_ERROR_CONFIG);

  sda_config_free(cfg);
}

TEST_CASE("c api: catalog handle") {
  sda_catalog* cat = nullptr;
  REQUIRE(sda_catalog_load((kDataDir + "/optimization_set.csv").c_str(), &cat) == SDA_OK);
  REQUIRE(cat != nullptr);
  CHECK(sda_catalog_size(cat) == 39);
  CHECK(sda_catalog_family_count(cat, "DRO") == 3);
  CHECK(sda_catalog_family_count(cat, "L1TT") == 3);
  CHECK(sda_catalog_family_count(cat, "NOPE") == -1);

  // transfers drop out without the flag; periodic rows survive the defaults
  CHECK(sda_catalog_filter(cat, 1.3, 6.28, 0) == SDA_OK);
  CHECK(sda_catalog_size(cat) == 36);
  sda_catalog_free(cat);
}

TEST_CASE("c api: workflow rejects an unusable config") {
  sda_config* cfg = sda_config_new();
  // no catalog path set
  CHECK(sda_run_catalog(cfg, 0) == SDA_ERROR_CONFIG);
  CHECK(std::string(sda_last_error()).find("run.catalog") != std::string::npos);
  sda_config_free(cfg);
}
