/* Copyright 2026 The Cislunar SDA Toolkit Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C binding of the cislunar SDA toolkit. Opaque handles and status codes;
 * every entry point is usable from plain C. On failure, sda_last_error()
 * returns a thread-local description of the most recent error.
 */

#ifndef SDA_C_H
#define SDA_C_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sda_status {
  SDA_OK = 0,
  SDA_ERROR_CONFIG = 2,     /* bad configuration or malformed input */
  SDA_ERROR_NUMERICAL = 3,  /* integrator or filter failure */
  SDA_ERROR_INFEASIBLE = 4, /* the problem cannot be posed */
  SDA_ERROR_INTERNAL = 5
} sda_status;

typedef struct sda_config sda_config;   /* a run configuration */
typedef struct sda_catalog sda_catalog; /* an orbit catalog */

const char* sda_version(void);

/* Thread-local message for the last failing call. Never NULL. */
const char* sda_last_error(void);

/* --- configuration ------------------------------------------------- */

/* A config with the built-in experiment defaults. Never NULL. */
sda_config* sda_config_new(void);
void sda_config_free(sda_config* cfg);

/* Loads a TOML manifest over the current values. */
sda_status sda_config_load(sda_config* cfg, const char* toml_path);

/* Dotted-key override, e.g. ("sensor.fidelity", "high"). */
sda_status sda_config_set(sda_config* cfg, const char* key, const char* value);

/* Formats the current value of a key into buf. */
sda_status sda_config_get(const sda_config* cfg, const char* key, char* buf, size_t buf_size);

/* --- catalog handles ------------------------------------------------ */

sda_status sda_catalog_load(const char* path, sda_catalog** out);
void sda_catalog_free(sda_catalog* catalog);
int sda_catalog_size(const sda_catalog* catalog);

/* In-place filter; keeps records with SI <= si_max and period <= period_max,
 * transfers only when include_transfers is nonzero. */
sda_status sda_catalog_filter(sda_catalog* catalog, double si_max, double period_max,
                              int include_transfers);

/* Number of records in the named family (e.g. "DRO"); -1 on unknown family. */
int sda_catalog_family_count(const sda_catalog* catalog, const char* family);

/* --- command workflows ---------------------------------------------- */

/* Each runs one full command against the config, writing file products into
 * run.output_dir. Log lines go to stderr when verbose is nonzero. */
sda_status sda_run_catalog(const sda_config* cfg, int verbose);
sda_status sda_run_track(const sda_config* cfg, int verbose);
sda_status sda_run_optimize(const sda_config* cfg, int verbose);
sda_status sda_run_validate(const sda_config* cfg, int verbose);
sda_status sda_run_report(const sda_config* cfg, int verbose);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SDA_C_H */
