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

#ifndef SDA_HARNESS_HPP
#define SDA_HARNESS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "sda/catalog.hpp"
#include "sda/ekf.hpp"

namespace sda {

// Position RMSE per the loss definition: RMS over epochs of the difference
// between the estimated and true position-vector norms. Radially orthogonal
// error is invisible to this metric; rmse_vector below is the diagnostic
// companion.
double rmse_position_km(const TrackData& track, const CanonicalConstants& c);

enum class ErrorComponent { Position, Velocity };

// RMS over epochs of the error-vector norm: km for position, km/s for
// velocity.
double rmse_vector(const TrackData& track, ErrorComponent comp, const CanonicalConstants& c);

double visibility_fraction(const TrackData& track);

struct TargetSpec {
  std::string id;
  Family family = Family::DRO;
  std::optional<double> period;
  Vec6 ic = Vec6::Zero();
  bool randomize_phase = false;  // propagate the IC to a seeded random phase
};

TargetSpec to_target_spec(const OrbitRecord& rec, bool randomize_phase);

struct TrackResult {
  std::string target_id;
  Family family = Family::DRO;
  std::optional<double> period;
  double rmse_pos_km = 0.0;
  double rmse_vec_pos_km = 0.0;
  double rmse_vel_kmps = 0.0;
  double visibility_fraction = 0.0;
  bool error_flag = false;
  std::string error_message;
  // per-epoch series; dropped after metric extraction unless requested
  std::shared_ptr<const TrackData> series;
};

struct ScenarioConfig {
  Procedure procedure = Procedure::StpA;
  int n_observers = 4;
  SensorSpec sensor{arcsec_to_rad(kLowFidelityArcsec), 1.283, kIndividualCadenceTu};
  double sigma_dyn = 1e-5;
  double horizon = 8.0;
  double init_perturbation_scale = 1.0;
  double failure_penalty_km = 1e4;
  uint64_t seed = 1;
  int threads = 1;
  IntegratorConfig integ;
  CanonicalConstants consts;

  TaskingSchedule schedule() const {
    return build_schedule(procedure, n_observers, sensor.individual_cadence);
  }
  NoiseModel noise() const {
    return make_noise_model(sigma_dyn, schedule().system_cadence(), sensor.sigma_angle);
  }
};

// Observer states on an epoch grid, shared across seeds, targets, and
// genomes. Keyed by (initial state bits, cadence, epoch count).
class EphemerisCache {
 public:
  std::shared_ptr<const std::vector<Vec6>> states(const Vec6& ic, double cadence, int n_epochs,
                                                  const IntegratorConfig& cfg,
                                                  const CanonicalConstants& c);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<uint64_t, std::shared_ptr<const std::vector<Vec6>>> map_;
};

// One seeded end-to-end track of a target; the track seed derives from
// (scenario seed, target id) only, so fitness comparisons across genomes
// share common random numbers.
TrackResult run_target_track(const TargetSpec& target, const std::vector<Vec6>& constellation,
                             const ScenarioConfig& cfg, EphemerisCache* cache,
                             bool keep_series = false);

// Mean position RMSE over the target set; per-target failures contribute the
// configured penalty. Deterministic for fixed config and seed regardless of
// thread count.
double objective(const std::vector<Vec6>& constellation, const std::vector<TargetSpec>& targets,
                 const ScenarioConfig& cfg, EphemerisCache* cache = nullptr,
                 std::vector<TrackResult>* out_tracks = nullptr);

struct FamilyStats {
  std::string family;
  int count = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

FamilyStats summarize(const std::string& label, std::vector<double> values);

struct HistogramSpec {
  std::vector<double> edges_km;  // ascending bin edges
  // group label -> member families; defaults merge sibling families
  std::vector<std::pair<std::string, std::vector<Family>>> groups;
  static HistogramSpec defaults();
};

struct HistogramRow {
  std::string group;
  std::string metric;  // "rmse_pos_km" | "rmse_vel_kmps"
  double lo = 0, hi = 0;
  int count = 0;
};

struct ValidationReport {
  std::vector<TrackResult> tracks;
  std::vector<FamilyStats> family_rmse;
  std::vector<FamilyStats> dro_split;              // "DRO-short", "DRO-long"
  std::map<std::string, double> family_visibility; // mean visibility_fraction
  std::vector<HistogramRow> histograms;
  int skipped_errors = 0;
};

ValidationReport validate(const std::vector<Vec6>& constellation,
                          const std::vector<TargetSpec>& targets, const ScenarioConfig& cfg,
                          double dro_split_period = 3.75,
                          const HistogramSpec& hist = HistogramSpec::defaults(),
                          EphemerisCache* cache = nullptr, bool keep_series = false);

struct SigmaSeriesRow {
  double t = 0.0;
  Vec6 error = Vec6::Zero();   // estimate - truth
  Vec6 sigma3 = Vec6::Zero();  // 3 sqrt(P_ii)
  bool no_visibility = false;  // epochs without a correction
};

std::vector<SigmaSeriesRow> three_sigma_series(const TrackData& track);

// CSV/JSON writers for the file products.
void write_track_csv(const std::string& path, const TrackData& track);
void write_per_target_csv(const std::string& path, const std::vector<TrackResult>& tracks);
void write_family_stats_json(const std::string& path, const ValidationReport& report);
void write_histograms_csv(const std::string& path, const std::vector<HistogramRow>& rows);
void write_sigma_csv(const std::string& path, const std::vector<SigmaSeriesRow>& rows);

}  // namespace sda

#endif  // SDA_HARNESS_HPP
