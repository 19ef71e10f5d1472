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

#include "sda/workflows.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <json.hpp>

#include "sda/io.hpp"
#include "sda/optimizer.hpp"
#include "sda/version.hpp"

namespace sda {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void logline(std::ostream* log, const std::string& msg) {
  if (log) *log << msg << "\n";
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw config_error("cannot create output directory '" + dir + "': " + ec.message());
}

// The one file allowed to carry a timestamp.
void write_meta(const std::string& outdir, const std::string& command, const RunConfig& cfg) {
  json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["seed"] = cfg.seed;
  const auto now = std::chrono::system_clock::now();
  j["timestamp_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  std::ofstream out(outdir + "/run_meta.json");
  if (out) out << j.dump(2) << "\n";
}

std::vector<TargetSpec> to_targets(const std::vector<OrbitRecord>& records, bool randomize) {
  std::vector<TargetSpec> targets;
  targets.reserve(records.size());
  for (const auto& r : records) targets.push_back(to_target_spec(r, randomize));
  return targets;
}

void write_slots_csv(const std::string& path, const std::vector<OrbitalSlot>& slots) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write slots file: " + path);
  out << "slot_id,orbit_id,family,phase_index,phase_fraction,period_tu,x,y,z,vx,vy,vz\n";
  for (const auto& s : slots) {
    out << s.orbit_id << '#' << s.phase_index << ',' << s.orbit_id << ','
        << family_label(s.family) << ',' << s.phase_index << ','
        << format_g9(s.phase_fraction) << ',' << (s.period ? format_full(*s.period) : "");
    for (int i = 0; i < 6; ++i) out << ',' << format_full(s.epoch_state[i]);
    out << "\n";
  }
}

int parse_int_cell(const std::string& cell, const std::string& path, int row) {
  try {
    return std::stoi(cell);
  } catch (...) {
    throw config_error(path + ":" + std::to_string(row) + ": expected an integer, got '" +
                       cell + "'");
  }
}

std::vector<OrbitalSlot> load_slots_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open slots file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw config_error("slots file is empty: " + path);
  std::vector<OrbitalSlot> slots;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() < 12) {
      throw config_error(path + ":" + std::to_string(row) + ": expected 12 cells");
    }
    OrbitalSlot s;
    s.orbit_id = cells[1];
    s.family = family_from_label(cells[2]);
    s.phase_index = parse_int_cell(cells[3], path, row);
    s.phase_fraction = parse_double(cells[4]).value_or(0.0);
    s.period = parse_double(cells[5]);
    for (int i = 0; i < 6; ++i) s.epoch_state[i] = parse_double(cells[6 + i]).value();
    slots.push_back(std::move(s));
  }
  return slots;
}

OrbitRecord find_target(const std::vector<OrbitRecord>& records, const std::string& id) {
  for (const auto& r : records) {
    if (r.id == id) return r;
  }
  throw config_error("target id '" + id + "' not found in the targets file");
}

struct TrackSummaryRow {
  uint64_t seed;
  double rmse_pos_km, rmse_vec_pos_km, rmse_vel_kmps, visibility;
};

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ScenarioConfig make_scenario(const RunConfig& cfg) {
  ScenarioConfig sc;
  sc.procedure = procedure_from_label(cfg.procedure);
  sc.n_observers = cfg.n_observers;
  sc.sensor.sigma_angle = cfg.sigma_angle_rad();
  sc.sensor.max_range = cfg.max_range_km / cfg.constants.du_km;
  sc.sensor.individual_cadence = cfg.individual_cadence_tu;
  sc.sigma_dyn = cfg.sigma_dyn;
  sc.horizon = cfg.horizon_tu;
  sc.init_perturbation_scale = cfg.init_perturbation_scale;
  sc.failure_penalty_km = cfg.failure_penalty_km;
  sc.seed = cfg.seed;
  sc.threads = cfg.threads;
  sc.integ = cfg.integrator();
  sc.consts = cfg.constants;
  return sc;
}

std::vector<ConstellationRow> load_constellation(const std::string& path,
                                                 const std::string& stp_token) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open constellation file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw config_error("constellation file is empty: " + path);
  const auto header = split_csv_line(line);
  if (header.size() < 9 || header[0] != "stp" || header[1] != "family") {
    throw config_error(path + ": expected header stp,family,period_tu,x,y,z,vx,vy,vz");
  }
  std::vector<ConstellationRow> rows;
  int rowno = 1;
  while (std::getline(in, line)) {
    ++rowno;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() < 9) {
      throw config_error(path + ":" + std::to_string(rowno) + ": expected 9 cells");
    }
    if (!stp_token.empty() && cells[0] != stp_token) continue;
    ConstellationRow r;
    r.stp = cells[0];
    r.family = family_from_label(cells[1]);
    r.period = parse_double(cells[2]);
    for (int i = 0; i < 6; ++i) r.state[i] = parse_double(cells[3 + i]).value();
    rows.push_back(std::move(r));
  }
  if (rows.empty()) {
    throw config_error(path + ": no constellation rows match stp token '" + stp_token + "'");
  }
  return rows;
}

std::vector<OrbitRecord> stratified_subsample(const std::vector<OrbitRecord>& records,
                                              int sample_size) {
  if (sample_size <= 0 || sample_size >= static_cast<int>(records.size())) {
    return records;
  }
  std::map<std::string, std::vector<OrbitRecord>> by_family;
  std::vector<std::string> family_order;
  for (const auto& r : records) {
    const std::string fam = family_label(r.family);
    if (!by_family.count(fam)) family_order.push_back(fam);
    by_family[fam].push_back(r);
  }
  for (auto& [fam, members] : by_family) {
    std::sort(members.begin(), members.end(), [](const OrbitRecord& a, const OrbitRecord& b) {
      const double pa = a.period.value_or(0.0), pb = b.period.value_or(0.0);
      if (pa != pb) return pa < pb;
      return a.id < b.id;
    });
  }

  // proportional allocation with at least one per family, largest remainder
  const double total = static_cast<double>(records.size());
  std::map<std::string, int> alloc;
  std::vector<std::pair<double, std::string>> remainders;
  int assigned = 0;
  for (const auto& fam : family_order) {
    const double share = sample_size * by_family[fam].size() / total;
    int base = std::max(1, static_cast<int>(std::floor(share)));
    base = std::min<int>(base, by_family[fam].size());
    alloc[fam] = base;
    assigned += base;
    remainders.push_back({share - std::floor(share), fam});
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::size_t ri = 0;
  while (assigned < sample_size && ri < 10 * remainders.size()) {
    const auto& fam = remainders[ri % remainders.size()].second;
    if (alloc[fam] < static_cast<int>(by_family[fam].size())) {
      ++alloc[fam];
      ++assigned;
    }
    ++ri;
  }
  while (assigned > sample_size) {
    // trim from the largest allocations
    auto largest = std::max_element(alloc.begin(), alloc.end(), [](const auto& a, const auto& b) {
      return a.second < b.second;
    });
    --largest->second;
    --assigned;
  }

  std::vector<OrbitRecord> sample;
  for (const auto& fam : family_order) {
    const auto& members = by_family[fam];
    const int k = alloc[fam];
    for (int i = 0; i < k; ++i) {
      const std::size_t idx = static_cast<std::size_t>(i) * members.size() / k;
      sample.push_back(members[idx]);
    }
  }
  return sample;
}

void run_catalog_workflow(const RunConfig& cfg, std::ostream* log) {
  if (cfg.catalog.empty()) throw config_error("run.catalog is required for the catalog command");
  ensure_dir(cfg.output_dir);

  auto records = load_catalog(cfg.catalog);
  logline(log, "loaded " + std::to_string(records.size()) + " catalog records");

  if (cfg.verify_catalog) {
    const auto verified = verify_catalog(records, 1e-5, cfg.integrator(), cfg.constants);
    for (const auto& d : verified.diagnostics) logline(log, "excluded: " + d);
    records = verified.kept;
  }

  const auto filtered =
      filter_catalog(records, cfg.si_max, cfg.period_max_tu, cfg.include_transfers);
  logline(log, "filtered to " + std::to_string(filtered.size()) + " records");

  save_catalog(filtered, cfg.output_dir + "/filtered_catalog.csv");

  // per-family counts
  std::map<std::string, int> counts;
  for (const auto& r : filtered) ++counts[family_label(r.family)];
  {
    std::ofstream out(cfg.output_dir + "/family_counts.csv");
    if (!out) throw config_error("cannot write family counts");
    out << "family,count\n";
    for (const auto& [fam, n] : counts) out << fam << ',' << n << "\n";
  }
  for (const auto& [fam, n] : counts) logline(log, fam + ": " + std::to_string(n));

  std::vector<OrbitRecord> periodic;
  for (const auto& r : filtered) {
    if (r.period) periodic.push_back(r);
  }
  const auto slots = generate_slots(periodic, cfg.slots_per_orbit, cfg.integrator(), cfg.constants);
  write_slots_csv(cfg.output_dir + "/slots.csv", slots);
  logline(log, "wrote " + std::to_string(slots.size()) + " slots");
  write_meta(cfg.output_dir, "catalog", cfg);
}

void run_track_workflow(const RunConfig& cfg, std::ostream* log) {
  if (cfg.targets.empty()) throw config_error("run.targets is required for the track command");
  if (cfg.constellation.empty())
    throw config_error("run.constellation is required for the track command");
  ensure_dir(cfg.output_dir);

  const auto target_records = load_catalog(cfg.targets);
  OrbitRecord target;
  if (!cfg.target_id.empty()) {
    target = find_target(target_records, cfg.target_id);
  } else if (target_records.size() == 1) {
    target = target_records.front();
  } else {
    throw config_error("run.target_id is required when the targets file has several rows");
  }

  const std::string stp_token = cfg.stp.empty() ? cfg.procedure : cfg.stp;
  const auto rows = load_constellation(cfg.constellation, stp_token);
  std::vector<Vec6> constellation;
  for (const auto& r : rows) constellation.push_back(r.state);

  ScenarioConfig sc = make_scenario(cfg);
  sc.n_observers = static_cast<int>(constellation.size());

  EphemerisCache cache;
  const TargetSpec spec = to_target_spec(target, cfg.random_phase);

  std::vector<TrackSummaryRow> summary;
  for (int i = 0; i < cfg.seeds; ++i) {
    ScenarioConfig per_seed = sc;
    per_seed.seed = cfg.seed + static_cast<uint64_t>(i);
    const TrackResult tr = run_target_track(spec, constellation, per_seed, &cache, true);
    if (tr.error_flag) {
      throw numerical_error("track failed (seed " + std::to_string(per_seed.seed) +
                            "): " + tr.error_message);
    }
    write_track_csv(cfg.output_dir + "/track_" + target.id + "_seed" +
                        std::to_string(per_seed.seed) + ".csv",
                    *tr.series);
    write_sigma_csv(cfg.output_dir + "/sigma_" + target.id + "_seed" +
                        std::to_string(per_seed.seed) + ".csv",
                    three_sigma_series(*tr.series));
    summary.push_back({per_seed.seed, tr.rmse_pos_km, tr.rmse_vec_pos_km, tr.rmse_vel_kmps,
                       tr.visibility_fraction});
    logline(log, "seed " + std::to_string(per_seed.seed) +
                     ": rmse_pos_km=" + format_g9(tr.rmse_pos_km));
  }

  {
    std::ofstream out(cfg.output_dir + "/track_summary.csv");
    if (!out) throw config_error("cannot write track summary");
    out << "seed,rmse_pos_km,rmse_vec_pos_km,rmse_vel_kms,visibility_fraction\n";
    std::vector<double> rmses;
    for (const auto& row : summary) {
      out << row.seed << ',' << format_g9(row.rmse_pos_km) << ','
          << format_g9(row.rmse_vec_pos_km) << ',' << format_g9(row.rmse_vel_kmps) << ','
          << format_g9(row.visibility) << "\n";
      rmses.push_back(row.rmse_pos_km);
    }
    out << "median," << format_g9(median_of(rmses)) << ",,,\n";
  }
  write_meta(cfg.output_dir, "track", cfg);
}

void run_optimize_workflow(const RunConfig& cfg, std::ostream* log) {
  if (cfg.targets.empty()) throw config_error("run.targets is required for the optimize command");
  ensure_dir(cfg.output_dir);

  std::vector<OrbitalSlot> slots;
  if (!cfg.slots.empty()) {
    slots = load_slots_csv(cfg.slots);
  } else if (!cfg.catalog.empty()) {
    auto records = load_catalog(cfg.catalog);
    records = filter_catalog(records, cfg.si_max, cfg.period_max_tu, /*include_transfers=*/false);
    slots = generate_slots(records, cfg.slots_per_orbit, cfg.integrator(), cfg.constants);
  } else {
    throw config_error("optimize needs run.slots or run.catalog");
  }
  if (slots.empty()) throw infeasible_error("no candidate slots");
  logline(log, std::to_string(slots.size()) + " candidate slots");

  const auto target_records = load_catalog(cfg.targets);
  const auto targets = to_targets(target_records, cfg.random_phase);

  const ScenarioConfig sc = make_scenario(cfg);
  EphemerisCache cache;

  const auto fitness = [&, log](const ConstellationGenome& genome) {
    std::vector<Vec6> constellation;
    constellation.reserve(genome.slots.size());
    for (int idx : genome.slots) constellation.push_back(slots[idx].epoch_state);
    std::vector<TrackResult> tracks;
    const double value = objective(constellation, targets, sc, &cache, &tracks);
    for (const auto& t : tracks) {
      if (t.error_flag) {
        logline(log, "genome {" + genome.key() + "} target " + t.target_id +
                         " failed, counted as penalty: " + t.error_message);
      }
    }
    return value;
  };

  GAConfig ga;
  ga.population = cfg.population;
  ga.crossover_fraction = cfg.crossover_fraction;
  ga.max_generations = cfg.max_generations;
  ga.stall_generations = cfg.stall_generations;
  ga.stall_tolerance = cfg.stall_tolerance_km;
  ga.elite_count = cfg.elite_count;
  ga.seed = cfg.seed;
  ga.checkpoint_dir = cfg.checkpoint_dir.empty() ? cfg.output_dir + "/checkpoints"
                                                 : cfg.checkpoint_dir;
  ensure_dir(ga.checkpoint_dir);
  ga.resume_from = cfg.resume_from;
  for (const auto& s : slots) {
    ga.slot_labels.push_back(s.orbit_id + "#" + std::to_string(s.phase_index));
  }

  const GAResult result = optimize(static_cast<int>(slots.size()), cfg.n_observers, fitness, ga);
  logline(log, "best fitness " + format_g9(result.best_fitness) + " km after " +
                   std::to_string(result.generations) + " generation(s)");

  {
    std::ofstream out(cfg.output_dir + "/best_constellation.csv");
    if (!out) throw config_error("cannot write best constellation");
    out << "stp,family,period_tu,x,y,z,vx,vy,vz,orbit_id,phase_index\n";
    for (int idx : result.best.slots) {
      const auto& s = slots[idx];
      out << cfg.procedure << ',' << family_label(s.family) << ','
          << (s.period ? format_g9(*s.period) : "");
      for (int i = 0; i < 6; ++i) out << ',' << format_g9(s.epoch_state[i]);
      out << ',' << s.orbit_id << ',' << s.phase_index << "\n";
    }
  }
  {
    std::ofstream out(cfg.output_dir + "/fitness_history.csv");
    out << "generation,best_km\n";
    for (std::size_t g = 0; g < result.history.size(); ++g) {
      out << g << ',' << format_g9(result.history[g]) << "\n";
    }
  }

  json summary;
  summary["best_fitness_km"] = result.best_fitness;
  summary["generations"] = result.generations;
  summary["cache_hits"] = result.cache_hits;
  summary["cache_misses"] = result.cache_misses;
  summary["exhausted_small_set"] = result.exhausted;
  {
    json best = json::array();
    for (int idx : result.best.slots) {
      const auto& s = slots[idx];
      best.push_back({{"orbit_id", s.orbit_id},
                      {"phase_index", s.phase_index},
                      {"family", family_label(s.family)},
                      {"period_tu", s.period ? *s.period : 0.0}});
    }
    summary["best_slots"] = best;
  }

  if (cfg.exhaustive_check) {
    const auto ex = exhaustive_search(static_cast<int>(slots.size()), cfg.n_observers, fitness,
                                      cfg.exhaustive_cap);
    summary["exhaustive"] = {{"best_fitness_km", ex.best_fitness},
                             {"evaluations", ex.table.size()},
                             {"ga_relative_gap",
                              ex.best_fitness > 0.0
                                  ? (result.best_fitness - ex.best_fitness) / ex.best_fitness
                                  : 0.0}};
    logline(log, "exhaustive best " + format_g9(ex.best_fitness) + " km");
  }

  std::ofstream out(cfg.output_dir + "/ga_summary.json");
  if (!out) throw config_error("cannot write GA summary");
  out << summary.dump(2) << "\n";
  write_meta(cfg.output_dir, "optimize", cfg);
}

void run_validate_workflow(const RunConfig& cfg, std::ostream* log) {
  if (cfg.targets.empty()) throw config_error("run.targets is required for the validate command");
  if (cfg.constellation.empty())
    throw config_error("run.constellation is required for the validate command");
  ensure_dir(cfg.output_dir);

  auto target_records = load_catalog(cfg.targets);
  if (cfg.subsample > 0) {
    target_records = stratified_subsample(target_records, cfg.subsample);
    logline(log, "stratified subsample of " + std::to_string(target_records.size()) + " targets");
  }
  const auto targets = to_targets(target_records, cfg.random_phase);

  const std::string stp_token = cfg.stp.empty() ? cfg.procedure : cfg.stp;
  const auto rows = load_constellation(cfg.constellation, stp_token);
  std::vector<Vec6> constellation;
  for (const auto& r : rows) constellation.push_back(r.state);

  ScenarioConfig sc = make_scenario(cfg);
  sc.n_observers = static_cast<int>(constellation.size());

  HistogramSpec hist = HistogramSpec::defaults();
  if (!cfg.hist_edges_km.empty()) hist.edges_km = cfg.hist_edges_km;
  if (!cfg.hist_groups.empty()) {
    hist.groups.clear();
    for (const auto& label : cfg.hist_groups) {
      std::vector<Family> fams;
      std::size_t start = 0;
      for (std::size_t i = 0; i <= label.size(); ++i) {
        if (i == label.size() || label[i] == '+') {
          fams.push_back(family_from_label(label.substr(start, i - start)));
          start = i + 1;
        }
      }
      hist.groups.push_back({label, fams});
    }
  }

  EphemerisCache cache;
  const ValidationReport report =
      validate(constellation, targets, sc, cfg.dro_split_tu, hist, &cache, false);
  logline(log, "validated " + std::to_string(report.tracks.size()) + " targets, " +
                   std::to_string(report.skipped_errors) + " skipped");

  write_per_target_csv(cfg.output_dir + "/per_target.csv", report.tracks);
  write_family_stats_json(cfg.output_dir + "/family_stats.json", report);
  write_histograms_csv(cfg.output_dir + "/histograms.csv", report.histograms);

  // sigma series for the selected targets
  std::vector<std::string> sigma_ids;
  if (cfg.sigma_targets == "best-worst") {
    const TrackResult* best = nullptr;
    const TrackResult* worst = nullptr;
    for (const auto& t : report.tracks) {
      if (t.error_flag) continue;
      if (!best || t.rmse_pos_km < best->rmse_pos_km) best = &t;
      if (!worst || t.rmse_pos_km > worst->rmse_pos_km) worst = &t;
    }
    if (best) sigma_ids.push_back(best->target_id);
    if (worst && worst != best) sigma_ids.push_back(worst->target_id);
  } else if (cfg.sigma_targets != "none" && !cfg.sigma_targets.empty()) {
    for (const auto& id : split_csv_line(cfg.sigma_targets)) {
      if (!id.empty()) sigma_ids.push_back(id);
    }
  }
  for (const auto& id : sigma_ids) {
    auto it = std::find_if(target_records.begin(), target_records.end(),
                           [&](const OrbitRecord& r) { return r.id == id; });
    if (it == target_records.end()) continue;
    const TrackResult tr =
        run_target_track(to_target_spec(*it, cfg.random_phase), constellation, sc, &cache, true);
    if (!tr.error_flag && tr.series) {
      write_sigma_csv(cfg.output_dir + "/sigma_" + id + ".csv", three_sigma_series(*tr.series));
    }
  }
  write_meta(cfg.output_dir, "validate", cfg);
}

void run_report_workflow(const RunConfig& cfg, std::ostream* log) {
  const std::string results = cfg.results_dir.empty() ? cfg.output_dir : cfg.results_dir;
  const std::string per_target_path = results + "/per_target.csv";
  std::ifstream in(per_target_path);
  if (!in) {
    throw config_error("no completed validation found (missing " + per_target_path + ")");
  }

  std::string line;
  if (!std::getline(in, line)) throw config_error(per_target_path + " is empty");
  std::vector<TrackResult> tracks;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() < 8) {
      throw config_error(per_target_path + ":" + std::to_string(row) + ": expected 8 cells");
    }
    TrackResult t;
    t.target_id = cells[0];
    t.family = family_from_label(cells[1]);
    t.period = parse_double(cells[2]);
    t.rmse_pos_km = parse_double(cells[3]).value();
    t.rmse_vec_pos_km = parse_double(cells[4]).value();
    t.rmse_vel_kmps = parse_double(cells[5]).value();
    t.visibility_fraction = parse_double(cells[6]).value();
    t.error_flag = cells[7] == "1";
    tracks.push_back(std::move(t));
  }
  if (tracks.empty()) throw config_error(per_target_path + " has no result rows");

  ensure_dir(cfg.output_dir);

  // rebuild the aggregates from the per-target table
  ValidationReport report;
  report.tracks = tracks;
  std::map<std::string, std::vector<double>> rmse_by_family;
  std::map<std::string, std::vector<double>> vis_by_family;
  std::vector<double> dro_short, dro_long;
  for (const auto& t : tracks) {
    if (t.error_flag) {
      ++report.skipped_errors;
      continue;
    }
    rmse_by_family[family_label(t.family)].push_back(t.rmse_pos_km);
    vis_by_family[family_label(t.family)].push_back(t.visibility_fraction);
    if (t.family == Family::DRO && t.period) {
      (*t.period > cfg.dro_split_tu ? dro_long : dro_short).push_back(t.rmse_pos_km);
    }
  }
  for (const auto& [fam, values] : rmse_by_family) {
    report.family_rmse.push_back(summarize(fam, values));
  }
  if (!dro_short.empty()) report.dro_split.push_back(summarize("DRO-short", dro_short));
  if (!dro_long.empty()) report.dro_split.push_back(summarize("DRO-long", dro_long));
  for (const auto& [fam, values] : vis_by_family) {
    double sum = 0.0;
    for (double v : values) sum += v;
    report.family_visibility[fam] = sum / values.size();
  }

  HistogramSpec hist = HistogramSpec::defaults();
  if (!cfg.hist_edges_km.empty()) hist.edges_km = cfg.hist_edges_km;
  for (const auto& [group, families] : hist.groups) {
    for (const char* metric : {"rmse_pos_km", "rmse_vel_kmps"}) {
      std::vector<int> counts(hist.edges_km.size() - 1, 0);
      for (const auto& t : tracks) {
        if (t.error_flag) continue;
        if (std::find(families.begin(), families.end(), t.family) == families.end()) continue;
        const double v = std::string(metric) == "rmse_pos_km" ? t.rmse_pos_km : t.rmse_vel_kmps;
        for (std::size_t b = 0; b + 1 < hist.edges_km.size(); ++b) {
          if (v >= hist.edges_km[b] &&
              (v < hist.edges_km[b + 1] ||
               (b + 2 == hist.edges_km.size() && v <= hist.edges_km[b + 1]))) {
            ++counts[b];
            break;
          }
        }
      }
      for (std::size_t b = 0; b < counts.size(); ++b) {
        report.histograms.push_back(
            {group, metric, hist.edges_km[b], hist.edges_km[b + 1], counts[b]});
      }
    }
  }

  write_family_stats_json(cfg.output_dir + "/family_stats.json", report);
  write_histograms_csv(cfg.output_dir + "/histograms.csv", report.histograms);
  logline(log, "reported " + std::to_string(report.family_rmse.size()) + " families");
  write_meta(cfg.output_dir, "report", cfg);
}

}  // namespace sda
