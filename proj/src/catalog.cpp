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

#include "sda/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "sda/io.hpp"
#include "sda/rng.hpp"

namespace sda {

namespace {

const std::pair<Family, const char*> kFamilyLabels[] = {
    {Family::BNO, "BNO"},     {Family::BSO, "BSO"},     {Family::DRO, "DRO"},
    {Family::L1NHO, "L1NHO"}, {Family::L1SHO, "L1SHO"}, {Family::L2NHO, "L2NHO"},
    {Family::L2SHO, "L2SHO"}, {Family::LPEO, "LPEO"},   {Family::LPWO, "LPWO"},
    {Family::R11O, "R1:1O"},  {Family::R21O, "R2:1O"},  {Family::R41O, "R4:1O"},
    {Family::L1TT, "L1TT"},   {Family::NRHO, "NRHO"},
};

constexpr const char* kHeader = "id,family,x,y,z,vx,vy,vz,period_tu,stability_index";

}  // namespace

const char* family_label(Family f) {
  for (const auto& [fam, label] : kFamilyLabels) {
    if (fam == f) return label;
  }
  throw config_error("unknown family enum value");
}

Family family_from_label(const std::string& label) {
  for (const auto& [fam, lbl] : kFamilyLabels) {
    if (label == lbl) return fam;
  }
  throw config_error("unknown orbit family label: '" + label + "'");
}

const std::vector<Family>& periodic_families() {
  static const std::vector<Family> fams = {
      Family::BNO,  Family::BSO,  Family::DRO,  Family::L1NHO,
      Family::L1SHO, Family::L2NHO, Family::L2SHO, Family::LPEO,
      Family::LPWO, Family::R11O, Family::R21O, Family::R41O,
  };
  return fams;
}

std::vector<OrbitRecord> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open catalog file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw config_error("catalog file is empty: " + path);
  const auto header = split_csv_line(line);
  const auto expected = split_csv_line(kHeader);
  if (header.size() < expected.size()) {
    throw config_error(path + ": catalog header is missing columns (expected '" +
                       std::string(kHeader) + "')");
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (header[i] != expected[i]) {
      throw config_error(path + ": unexpected catalog column " + std::to_string(i + 1) +
                         " ('" + header[i] + "', expected '" + expected[i] + "')");
    }
  }

  std::vector<OrbitRecord> records;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    const std::string where = path + ":" + std::to_string(row);
    if (cells.size() < 10) throw config_error(where + ": expected 10 cells, got " +
                                              std::to_string(cells.size()));
    OrbitRecord rec;
    rec.id = cells[0];
    if (rec.id.empty()) throw config_error(where + ": empty orbit id");
    try {
      rec.family = family_from_label(cells[1]);
      for (int i = 0; i < 6; ++i) {
        const auto v = parse_double(cells[2 + i]);
        if (!v) throw config_error("missing state component");
        rec.ic[i] = *v;
      }
      rec.period = parse_double(cells[8]);
      rec.stability_index = parse_double(cells[9]);
    } catch (const Error& e) {
      throw config_error(where + ": " + e.what());
    }
    if (!rec.ic.allFinite()) throw config_error(where + ": non-finite state component");
    if (rec.period && !(std::isfinite(*rec.period) && *rec.period > 0.0)) {
      throw config_error(where + ": period must be positive and finite");
    }
    if (rec.stability_index && !(std::isfinite(*rec.stability_index) && *rec.stability_index >= 1.0)) {
      throw config_error(where + ": stability index must be >= 1");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void save_catalog(const std::vector<OrbitRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write catalog file: " + path);
  out << kHeader << "\n";
  for (const auto& r : records) {
    out << r.id << ',' << family_label(r.family);
    for (int i = 0; i < 6; ++i) out << ',' << format_full(r.ic[i]);
    out << ',' << (r.period ? format_full(*r.period) : "");
    out << ',' << (r.stability_index ? format_full(*r.stability_index) : "");
    out << "\n";
  }
}

std::vector<OrbitRecord> filter_catalog(const std::vector<OrbitRecord>& records,
                                        double si_max, double period_max,
                                        bool include_transfers) {
  std::vector<OrbitRecord> kept;
  kept.reserve(records.size());
  for (const auto& r : records) {
    if (!r.period) {
      if (include_transfers) kept.push_back(r);
      continue;
    }
    if (*r.period > period_max) continue;
    if (r.stability_index && *r.stability_index > si_max) continue;
    kept.push_back(r);
  }
  return kept;
}

std::vector<OrbitalSlot> generate_slots(const std::vector<OrbitRecord>& records,
                                        int slots_per_orbit,
                                        const IntegratorConfig& cfg,
                                        const CanonicalConstants& c) {
  if (slots_per_orbit < 1) throw config_error("slots_per_orbit must be >= 1");
  std::vector<OrbitalSlot> slots;
  slots.reserve(records.size() * slots_per_orbit);
  for (const auto& r : records) {
    if (!r.period) {
      throw config_error("orbit '" + r.id + "' has no period; cannot generate slots");
    }
    for (int k = 0; k < slots_per_orbit; ++k) {
      OrbitalSlot slot;
      slot.orbit_id = r.id;
      slot.family = r.family;
      slot.phase_index = k;
      slot.slots_per_orbit = slots_per_orbit;
      slot.phase_fraction = static_cast<double>(k) / slots_per_orbit;
      slot.period = r.period;
      try {
        slot.epoch_state = (k == 0)
                               ? r.ic
                               : propagate_state(r.ic, 0.0, slot.phase_fraction * *r.period, cfg, c);
      } catch (const Error& e) {
        throw numerical_error("slot generation failed for orbit '" + r.id +
                              "' phase " + std::to_string(k) + ": " + e.what());
      }
      slots.push_back(std::move(slot));
    }
  }
  return slots;
}

double sample_phase_fraction(const OrbitRecord& record, uint64_t seed) {
  if (!record.period) throw config_error("orbit '" + record.id + "' has no period to sample");
  Rng rng(hash_combine(seed, hash_str(record.id)));
  return rng.uniform01();
}

Vec6 sample_target_phase(const OrbitRecord& record, uint64_t seed,
                         const IntegratorConfig& cfg, const CanonicalConstants& c) {
  const double u = sample_phase_fraction(record, seed) * *record.period;
  if (u == 0.0) return record.ic;
  return propagate_state(record.ic, 0.0, u, cfg, c);
}

TargetSet build_optimization_set(const std::vector<OrbitRecord>& validation,
                                 const std::vector<OrbitRecord>& transfers) {
  TargetSet set;
  set.kind = TargetSetKind::Optimization;

  std::map<Family, std::vector<const OrbitRecord*>> by_family;
  for (const auto& r : validation) {
    if (is_transfer(r.family) || !r.period) continue;
    by_family[r.family].push_back(&r);
  }

  for (Family fam : periodic_families()) {
    auto it = by_family.find(fam);
    if (it == by_family.end() || it->second.empty()) {
      throw infeasible_error(std::string("orbit family ") + family_label(fam) +
                             " is empty; cannot build the optimization target set");
    }
    auto& members = it->second;
    std::sort(members.begin(), members.end(), [](const OrbitRecord* a, const OrbitRecord* b) {
      if (*a->period != *b->period) return *a->period < *b->period;
      return a->id < b->id;
    });
    const std::size_t n = members.size();
    if (n >= 3) {
      const std::size_t median = (n - 1) / 2;  // lower median
      set.members.push_back(*members.front());
      set.members.push_back(*members[median]);
      set.members.push_back(*members.back());
    } else {
      for (const auto* m : members) set.members.push_back(*m);
      set.warnings.push_back(std::string("family ") + family_label(fam) + " has only " +
                             std::to_string(n) + " orbit(s); selected all of them");
    }
  }

  // three transfers: first, middle, last of the provided list
  if (transfers.empty()) {
    set.warnings.push_back("no transfer records provided");
  } else if (transfers.size() <= 3) {
    for (const auto& t : transfers) set.members.push_back(t);
    if (transfers.size() < 3) {
      set.warnings.push_back("only " + std::to_string(transfers.size()) +
                             " transfer record(s) available");
    }
  } else {
    set.members.push_back(transfers.front());
    set.members.push_back(transfers[transfers.size() / 2]);
    set.members.push_back(transfers.back());
  }
  return set;
}

std::vector<OrbitRecord> generate_transfers(const OrbitRecord& halo, int count,
                                            double max_backward_horizon,
                                            const IntegratorConfig& cfg,
                                            const CanonicalConstants& c) {
  if (!halo.period) throw config_error("transfer generation needs a periodic halo record");
  if (count < 1) throw config_error("transfer count must be >= 1");

  std::vector<OrbitRecord> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double phase = static_cast<double>(k) / count * *halo.period;
    Vec6 seed = (k == 0) ? halo.ic : propagate_state(halo.ic, 0.0, phase, cfg, c);
    PlaneCrossing pc;
    try {
      pc = propagate_to_plane_crossing(seed, /*backward=*/true, max_backward_horizon, cfg, c);
    } catch (const Error& e) {
      throw numerical_error("transfer point " + std::to_string(k) + " of orbit '" + halo.id +
                            "': " + e.what());
    }
    OrbitRecord rec;
    rec.id = halo.id + "-tt" + std::to_string(k);
    rec.family = Family::L1TT;
    rec.ic = pc.state;
    out.push_back(std::move(rec));
  }
  return out;
}

CatalogVerification verify_catalog(const std::vector<OrbitRecord>& records,
                                   double closure_tol,
                                   const IntegratorConfig& cfg,
                                   const CanonicalConstants& c) {
  CatalogVerification result;
  const double r_earth = kEarthRadiusKm / c.du_km;
  const double r_moon = kMoonRadiusKm / c.du_km;
  for (const auto& r : records) {
    if (!r.period) {
      result.kept.push_back(r);  // transfers are not periodicity-checked
      continue;
    }
    try {
      const Trajectory traj = propagate(r.ic, 0.0, *r.period, cfg, c);
      double min_r1 = 1e300, min_r2 = 1e300;
      for (std::size_t i = 0; i < traj.node_count(); ++i) {
        const auto d = primary_distances(traj.node_state(i), c);
        min_r1 = std::min(min_r1, d.r1);
        min_r2 = std::min(min_r2, d.r2);
      }
      const double closure = (traj.final_state() - r.ic).cwiseAbs().maxCoeff();
      if (closure > closure_tol) {
        result.diagnostics.push_back(r.id + ": closure " + format_g9(closure) +
                                     " exceeds " + format_g9(closure_tol));
        continue;
      }
      if (min_r1 < r_earth || min_r2 < r_moon) {
        result.diagnostics.push_back(r.id + ": intersects a primary body (min r1 " +
                                     format_g9(min_r1) + ", min r2 " + format_g9(min_r2) + ")");
        continue;
      }
      result.kept.push_back(r);
    } catch (const Error& e) {
      result.diagnostics.push_back(r.id + ": propagation failed: " + e.what());
    }
  }
  return result;
}

}  // namespace sda
