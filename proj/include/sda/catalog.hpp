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

#ifndef SDA_CATALOG_HPP
#define SDA_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "sda/integrate.hpp"
#include "sda/state.hpp"

namespace sda {

enum class Family {
  BNO, BSO, DRO, L1NHO, L1SHO, L2NHO, L2SHO,
  LPEO, LPWO, R11O, R21O, R41O, L1TT, NRHO,
};

const char* family_label(Family f);
Family family_from_label(const std::string& label);
inline bool is_transfer(Family f) { return f == Family::L1TT; }

// The 12 periodic families sampled into the optimization target set.
const std::vector<Family>& periodic_families();

struct OrbitRecord {
  std::string id;
  Family family = Family::DRO;
  Vec6 ic = Vec6::Zero();
  std::optional<double> period;           // TU; absent for transfer records
  std::optional<double> stability_index;  // absent for transfer records
};

struct OrbitalSlot {
  std::string orbit_id;
  Family family = Family::DRO;
  int phase_index = 0;
  int slots_per_orbit = 1;
  double phase_fraction = 0.0;
  Vec6 epoch_state = Vec6::Zero();
  std::optional<double> period;
};

enum class TargetSetKind { Optimization, Validation };

struct TargetSet {
  TargetSetKind kind = TargetSetKind::Optimization;
  std::vector<OrbitRecord> members;
  std::vector<std::string> warnings;
};

// CSV schema: id,family,x,y,z,vx,vy,vz,period_tu,stability_index with empty
// cells for absent period/SI. Rows with non-finite fields are rejected with
// row-numbered diagnostics.
std::vector<OrbitRecord> load_catalog(const std::string& path);
void save_catalog(const std::vector<OrbitRecord>& records, const std::string& path);

// Keeps records with SI <= si_max and period <= period_max (inclusive).
// Transfer records (no period/SI) pass only when include_transfers is set.
std::vector<OrbitRecord> filter_catalog(const std::vector<OrbitRecord>& records,
                                        double si_max, double period_max,
                                        bool include_transfers);

// Phase-equally-spaced observer slots on each (periodic) record.
std::vector<OrbitalSlot> generate_slots(const std::vector<OrbitRecord>& records,
                                        int slots_per_orbit,
                                        const IntegratorConfig& cfg,
                                        const CanonicalConstants& c);

// Uniform random phase in [0, T), deterministic per seed.
Vec6 sample_target_phase(const OrbitRecord& record, uint64_t seed,
                         const IntegratorConfig& cfg, const CanonicalConstants& c);
double sample_phase_fraction(const OrbitRecord& record, uint64_t seed);

// Per periodic family: the min-, lower-median-, and max-period records, plus
// three transfer records. Families with fewer than three members contribute
// what they have, with a warning.
TargetSet build_optimization_set(const std::vector<OrbitRecord>& validation,
                                 const std::vector<OrbitRecord>& transfers);

// Backpropagates `count` equally phased points of a periodic halo record to
// the yz-plane; the crossing states become L1TT transfer records.
std::vector<OrbitRecord> generate_transfers(const OrbitRecord& halo, int count,
                                            double max_backward_horizon,
                                            const IntegratorConfig& cfg,
                                            const CanonicalConstants& c);

struct CatalogVerification {
  std::vector<OrbitRecord> kept;
  std::vector<std::string> diagnostics;  // one line per excluded record
};

// Drops periodic records that fail the one-period closure check or that pass
// inside a primary body along the way.
CatalogVerification verify_catalog(const std::vector<OrbitRecord>& records,
                                   double closure_tol,
                                   const IntegratorConfig& cfg,
                                   const CanonicalConstants& c);

}  // namespace sda

#endif  // SDA_CATALOG_HPP
