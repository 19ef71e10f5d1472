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

#include "sda/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "sda/io.hpp"
#include "sda/parallel.hpp"

namespace sda {

namespace {

void require_epochs(const TrackData& track) {
  if (track.epochs.empty()) throw config_error("track has no epochs");
}

uint64_t bits_of(double v) {
  uint64_t u;
  static_assert(sizeof(u) == sizeof(v));
  std::memcpy(&u, &v, sizeof(u));
  return u;
}

double quantile(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = (n - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double rmse_position_km(const TrackData& track, const CanonicalConstants& c) {
  require_epochs(track);
  double acc = 0.0;
  for (const auto& e : track.epochs) {
    const double d = position(e.estimate).norm() - position(e.truth).norm();
    acc += d * d;
  }
  return std::sqrt(acc / track.epochs.size()) * c.du_km;
}

double rmse_vector(const TrackData& track, ErrorComponent comp, const CanonicalConstants& c) {
  require_epochs(track);
  double acc = 0.0;
  for (const auto& e : track.epochs) {
    const Vec3 err = (comp == ErrorComponent::Position)
                         ? Vec3(position(e.estimate) - position(e.truth))
                         : Vec3(velocity(e.estimate) - velocity(e.truth));
    acc += err.squaredNorm();
  }
  const double rms = std::sqrt(acc / track.epochs.size());
  return comp == ErrorComponent::Position ? rms * c.du_km : rms * c.du_km / c.tu_s;
}

double visibility_fraction(const TrackData& track) {
  if (track.epochs.empty()) return 0.0;
  std::size_t seen = 0;
  for (const auto& e : track.epochs) {
    if (e.visible_count > 0) ++seen;
  }
  return static_cast<double>(seen) / track.epochs.size();
}

TargetSpec to_target_spec(const OrbitRecord& rec, bool randomize_phase) {
  TargetSpec t;
  t.id = rec.id;
  t.family = rec.family;
  t.period = rec.period;
  t.ic = rec.ic;
  t.randomize_phase = randomize_phase && rec.period.has_value();
  return t;
}

std::shared_ptr<const std::vector<Vec6>> EphemerisCache::states(
    const Vec6& ic, double cadence, int n_epochs, const IntegratorConfig& cfg,
    const CanonicalConstants& c) {
  uint64_t key = bits_of(cadence) ^ hash_combine(0x45504845ULL, n_epochs);
  for (int i = 0; i < 6; ++i) key = hash_combine(key, bits_of(ic[i]));
  key = hash_combine(key, bits_of(cfg.abs_tol) ^ bits_of(cfg.rel_tol));

  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
  }

  auto states = std::make_shared<std::vector<Vec6>>();
  states->reserve(n_epochs);
  Vec6 s = ic;
  for (int k = 1; k <= n_epochs; ++k) {
    s = propagate_state(s, (k - 1) * cadence, k * cadence, cfg, c);
    states->push_back(s);
  }

  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = map_.emplace(key, std::move(states));
  (void)inserted;  // a racing duplicate computes identical values
  return it->second;
}

std::size_t EphemerisCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return map_.size();
}

TrackResult run_target_track(const TargetSpec& target, const std::vector<Vec6>& constellation,
                             const ScenarioConfig& cfg, EphemerisCache* cache,
                             bool keep_series) {
  TrackResult result;
  result.target_id = target.id;
  result.family = target.family;
  result.period = target.period;

  const uint64_t track_seed = hash_combine(cfg.seed, hash_str(target.id));
  const TaskingSchedule schedule = cfg.schedule();
  const NoiseModel noise = cfg.noise();

  try {
    Vec6 truth_ic = target.ic;
    if (target.randomize_phase) {
      if (!target.period) throw config_error("cannot phase-randomize a target without period");
      Rng rng(hash_combine(track_seed, kSeedPhase));
      const double u = rng.uniform01() * *target.period;
      if (u > 0.0) truth_ic = propagate_state(truth_ic, 0.0, u, cfg.integ, cfg.consts);
    }

    TrackOptions opts;
    opts.horizon = cfg.horizon;
    opts.init_perturbation_scale = cfg.init_perturbation_scale;
    opts.integ = cfg.integ;
    opts.consts = cfg.consts;

    std::vector<std::vector<Vec6>> eph;
    if (cache) {
      const int n = schedule.epoch_count(cfg.horizon);
      eph.reserve(constellation.size());
      for (const auto& obs_ic : constellation) {
        eph.push_back(*cache->states(obs_ic, schedule.system_cadence(), n, cfg.integ, cfg.consts));
      }
      opts.observer_ephemerides = &eph;
    }

    const TrackData track = run_track(truth_ic, constellation, schedule, noise,
                                      cfg.sensor, track_seed, opts);
    if (track.error_flag) {
      result.error_flag = true;
      result.error_message = track.error_message;
    }
    if (!track.epochs.empty()) {
      result.rmse_pos_km = rmse_position_km(track, cfg.consts);
      result.rmse_vec_pos_km = rmse_vector(track, ErrorComponent::Position, cfg.consts);
      result.rmse_vel_kmps = rmse_vector(track, ErrorComponent::Velocity, cfg.consts);
      result.visibility_fraction = visibility_fraction(track);
    } else {
      result.error_flag = true;
    }
    if (keep_series) result.series = std::make_shared<TrackData>(track);
  } catch (const Error& e) {
    result.error_flag = true;
    result.error_message = e.what();
  }
  return result;
}

double objective(const std::vector<Vec6>& constellation, const std::vector<TargetSpec>& targets,
                 const ScenarioConfig& cfg, EphemerisCache* cache,
                 std::vector<TrackResult>* out_tracks) {
  if (targets.empty()) throw config_error("objective needs a non-empty target set");

  std::vector<TrackResult> results(targets.size());
  parallel_for(targets.size(), cfg.threads, [&](std::size_t i) {
    results[i] = run_target_track(targets[i], constellation, cfg, cache, false);
  });

  double sum = 0.0;
  for (const auto& r : results) {
    sum += r.error_flag ? cfg.failure_penalty_km : r.rmse_pos_km;
  }
  if (out_tracks) *out_tracks = std::move(results);
  return sum / targets.size();
}

FamilyStats summarize(const std::string& label, std::vector<double> values) {
  if (values.empty()) throw config_error("cannot summarize an empty sample");
  std::sort(values.begin(), values.end());
  FamilyStats fs;
  fs.family = label;
  fs.count = static_cast<int>(values.size());
  fs.min = values.front();
  fs.max = values.back();
  fs.q1 = quantile(values, 0.25);
  fs.median = quantile(values, 0.5);
  fs.q3 = quantile(values, 0.75);
  double sum = 0.0;
  for (double v : values) sum += v;
  fs.mean = sum / values.size();
  return fs;
}

HistogramSpec HistogramSpec::defaults() {
  HistogramSpec spec;
  spec.edges_km = {0, 0.5, 1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 10000};
  spec.groups = {
      {"BNO+BSO", {Family::BNO, Family::BSO}},
      {"DRO", {Family::DRO}},
      {"L1NHO+L1SHO", {Family::L1NHO, Family::L1SHO}},
      {"L2NHO+L2SHO", {Family::L2NHO, Family::L2SHO}},
      {"LPEO+LPWO", {Family::LPEO, Family::LPWO}},
      {"R1:1O+R2:1O+R4:1O", {Family::R11O, Family::R21O, Family::R41O}},
      {"L1TT", {Family::L1TT}},
  };
  return spec;
}

ValidationReport validate(const std::vector<Vec6>& constellation,
                          const std::vector<TargetSpec>& targets, const ScenarioConfig& cfg,
                          double dro_split_period, const HistogramSpec& hist,
                          EphemerisCache* cache, bool keep_series) {
  ValidationReport report;
  report.tracks.resize(targets.size());
  parallel_for(targets.size(), cfg.threads, [&](std::size_t i) {
    report.tracks[i] = run_target_track(targets[i], constellation, cfg, cache, keep_series);
  });

  std::map<std::string, std::vector<double>> rmse_by_family;
  std::map<std::string, std::vector<double>> vis_by_family;
  std::vector<double> dro_short, dro_long;
  for (const auto& t : report.tracks) {
    if (t.error_flag) {
      ++report.skipped_errors;
      continue;
    }
    const std::string fam = family_label(t.family);
    rmse_by_family[fam].push_back(t.rmse_pos_km);
    vis_by_family[fam].push_back(t.visibility_fraction);
    if (t.family == Family::DRO && t.period) {
      (*t.period > dro_split_period ? dro_long : dro_short).push_back(t.rmse_pos_km);
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

  // histograms over both RMSE metrics, by family grouping
  for (const auto& [group, families] : hist.groups) {
    for (const char* metric : {"rmse_pos_km", "rmse_vel_kmps"}) {
      std::vector<int> counts(hist.edges_km.size() > 0 ? hist.edges_km.size() - 1 : 0, 0);
      for (const auto& t : report.tracks) {
        if (t.error_flag) continue;
        if (std::find(families.begin(), families.end(), t.family) == families.end()) continue;
        const double v = std::string(metric) == "rmse_pos_km" ? t.rmse_pos_km : t.rmse_vel_kmps;
        for (std::size_t b = 0; b + 1 < hist.edges_km.size(); ++b) {
          if (v >= hist.edges_km[b] && (v < hist.edges_km[b + 1] ||
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
  return report;
}

std::vector<SigmaSeriesRow> three_sigma_series(const TrackData& track) {
  std::vector<SigmaSeriesRow> rows;
  rows.reserve(track.epochs.size());
  for (const auto& e : track.epochs) {
    SigmaSeriesRow row;
    row.t = e.t;
    row.error = e.estimate - e.truth;
    for (int i = 0; i < 6; ++i) row.sigma3[i] = 3.0 * std::sqrt(std::max(0.0, e.p_diag[i]));
    row.no_visibility = !e.corrected;
    rows.push_back(row);
  }
  return rows;
}

void write_track_csv(const std::string& path, const TrackData& track) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write track file: " + path);
  out << "epoch_tu,truth_x,truth_y,truth_z,truth_vx,truth_vy,truth_vz,"
         "est_x,est_y,est_z,est_vx,est_vy,est_vz,"
         "p11,p22,p33,p44,p55,p66,visible_count,corrected\n";
  for (const auto& e : track.epochs) {
    out << format_g9(e.t);
    for (int i = 0; i < 6; ++i) out << ',' << format_g9(e.truth[i]);
    for (int i = 0; i < 6; ++i) out << ',' << format_g9(e.estimate[i]);
    for (int i = 0; i < 6; ++i) out << ',' << format_g9(e.p_diag[i]);
    out << ',' << e.visible_count << ',' << (e.corrected ? 1 : 0) << "\n";
  }
}

void write_per_target_csv(const std::string& path, const std::vector<TrackResult>& tracks) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write per-target file: " + path);
  out << "target_id,family,period_tu,rmse_pos_km,rmse_vec_pos_km,rmse_vel_kms,"
         "visibility_fraction,error\n";
  for (const auto& t : tracks) {
    out << t.target_id << ',' << family_label(t.family) << ','
        << (t.period ? format_g9(*t.period) : "") << ',' << format_g9(t.rmse_pos_km) << ','
        << format_g9(t.rmse_vec_pos_km) << ',' << format_g9(t.rmse_vel_kmps) << ','
        << format_g9(t.visibility_fraction) << ',' << (t.error_flag ? 1 : 0) << "\n";
  }
}

namespace {

nlohmann::json stats_to_json(const FamilyStats& fs) {
  return {{"family", fs.family}, {"count", fs.count}, {"min_km", fs.min},
          {"q1_km", fs.q1},      {"median_km", fs.median}, {"q3_km", fs.q3},
          {"max_km", fs.max},    {"mean_km", fs.mean}};
}

}  // namespace

void write_family_stats_json(const std::string& path, const ValidationReport& report) {
  nlohmann::json j;
  j["families"] = nlohmann::json::array();
  for (const auto& fs : report.family_rmse) j["families"].push_back(stats_to_json(fs));
  j["dro_split"] = nlohmann::json::array();
  for (const auto& fs : report.dro_split) j["dro_split"].push_back(stats_to_json(fs));
  j["mean_visibility"] = report.family_visibility;
  j["skipped_errors"] = report.skipped_errors;
  std::ofstream out(path);
  if (!out) throw config_error("cannot write stats file: " + path);
  out << j.dump(2) << "\n";
}

void write_histograms_csv(const std::string& path, const std::vector<HistogramRow>& rows) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write histogram file: " + path);
  out << "group,metric,bin_lo,bin_hi,count\n";
  for (const auto& r : rows) {
    out << r.group << ',' << r.metric << ',' << format_g9(r.lo) << ',' << format_g9(r.hi) << ','
        << r.count << "\n";
  }
}

void write_sigma_csv(const std::string& path, const std::vector<SigmaSeriesRow>& rows) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write sigma file: " + path);
  out << "epoch_tu,err_x,err_y,err_z,err_vx,err_vy,err_vz,"
         "sig3_x,sig3_y,sig3_z,sig3_vx,sig3_vy,sig3_vz,no_visibility\n";
  for (const auto& r : rows) {
    out << format_g9(r.t);
    for (int i = 0; i < 6; ++i) out << ',' << format_g9(r.error[i]);
    for (int i = 0; i < 6; ++i) out << ',' << format_g9(r.sigma3[i]);
    out << ',' << (r.no_visibility ? 1 : 0) << "\n";
  }
}

}  // namespace sda
