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

#include "sda/sda_c.h"

#include <cstring>
#include <iostream>
#include <string>

#include "sda/catalog.hpp"
#include "sda/config.hpp"
#include "sda/version.hpp"
#include "sda/workflows.hpp"

struct sda_config {
  sda::RunConfig cfg;
};

struct sda_catalog {
  std::vector<sda::OrbitRecord> records;
};

namespace {

thread_local std::string g_last_error = "no error";

sda_status status_of(const sda::Error& e) {
  switch (e.kind()) {
    case sda::ErrorKind::Config: return SDA_ERROR_CONFIG;
    case sda::ErrorKind::Numerical: return SDA_ERROR_NUMERICAL;
    case sda::ErrorKind::Infeasible: return SDA_ERROR_INFEASIBLE;
    case sda::ErrorKind::Internal: return SDA_ERROR_INTERNAL;
  }
  return SDA_ERROR_INTERNAL;
}

template <class Fn>
sda_status guarded(Fn&& fn) {
  try {
    fn();
    return SDA_OK;
  } catch (const sda::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SDA_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SDA_ERROR_INTERNAL;
  }
}

sda_status run_workflow(const sda_config* cfg, int verbose,
                        void (*workflow)(const sda::RunConfig&, std::ostream*)) {
  if (!cfg) {
    g_last_error = "null config handle";
    return SDA_ERROR_CONFIG;
  }
  return guarded([&] { workflow(cfg->cfg, verbose ? &std::cerr : nullptr); });
}

}  // namespace

extern "C" {

const char* sda_version(void) { return sda::kVersion; }

const char* sda_last_error(void) { return g_last_error.c_str(); }

sda_config* sda_config_new(void) {
  auto* cfg = new sda_config{};
  sda::apply_env_overrides(cfg->cfg);
  return cfg;
}

void sda_config_free(sda_config* cfg) { delete cfg; }

sda_status sda_config_load(sda_config* cfg, const char* toml_path) {
  if (!cfg || !toml_path) {
    g_last_error = "null argument";
    return SDA_ERROR_CONFIG;
  }
  return guarded([&] { cfg->cfg = sda::load_config(toml_path); });
}

sda_status sda_config_set(sda_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) {
    g_last_error = "null argument";
    return SDA_ERROR_CONFIG;
  }
  return guarded([&] { sda::set_config_value(cfg->cfg, key, value); });
}

sda_status sda_config_get(const sda_config* cfg, const char* key, char* buf, size_t buf_size) {
  if (!cfg || !key || !buf || buf_size == 0) {
    g_last_error = "null argument";
    return SDA_ERROR_CONFIG;
  }
  return guarded([&] {
    const std::string value = sda::get_config_value(cfg->cfg, key);
    if (value.size() + 1 > buf_size) {
      throw sda::config_error("buffer too small for value of '" + std::string(key) + "'");
    }
    std::memcpy(buf, value.c_str(), value.size() + 1);
  });
}

sda_status sda_catalog_load(const char* path, sda_catalog** out) {
  if (!path || !out) {
    g_last_error = "null argument";
    return SDA_ERROR_CONFIG;
  }
  *out = nullptr;
  return guarded([&] { *out = new sda_catalog{sda::load_catalog(path)}; });
}

void sda_catalog_free(sda_catalog* catalog) { delete catalog; }

int sda_catalog_size(const sda_catalog* catalog) {
  return catalog ? static_cast<int>(catalog->records.size()) : 0;
}

sda_status sda_catalog_filter(sda_catalog* catalog, double si_max, double period_max,
                              int include_transfers) {
  if (!catalog) {
    g_last_error = "null catalog handle";
    return SDA_ERROR_CONFIG;
  }
  return guarded([&] {
    catalog->records =
        sda::filter_catalog(catalog->records, si_max, period_max, include_transfers != 0);
  });
}

int sda_catalog_family_count(const sda_catalog* catalog, const char* family) {
  if (!catalog || !family) return -1;
  try {
    const sda::Family fam = sda::family_from_label(family);
    int count = 0;
    for (const auto& r : catalog->records) {
      if (r.family == fam) ++count;
    }
    return count;
  } catch (const sda::Error& e) {
    g_last_error = e.what();
    return -1;
  }
}

sda_status sda_run_catalog(const sda_config* cfg, int verbose) {
  return run_workflow(cfg, verbose, sda::run_catalog_workflow);
}

sda_status sda_run_track(const sda_config* cfg, int verbose) {
  return run_workflow(cfg, verbose, sda::run_track_workflow);
}

sda_status sda_run_optimize(const sda_config* cfg, int verbose) {
  return run_workflow(cfg, verbose, sda::run_optimize_workflow);
}

sda_status sda_run_validate(const sda_config* cfg, int verbose) {
  return run_workflow(cfg, verbose, sda::run_validate_workflow);
}

sda_status sda_run_report(const sda_config* cfg, int verbose) {
  return run_workflow(cfg, verbose, sda::run_report_workflow);
}

}  // extern "C"
