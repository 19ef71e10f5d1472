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

#ifndef SDA_MEASUREMENT_HPP
#define SDA_MEASUREMENT_HPP

#include <array>

#include "sda/constants.hpp"
#include "sda/rng.hpp"
#include "sda/state.hpp"

namespace sda {

// Observer-relative vectors: gamma points to the reference body (the Moon),
// rho points to the target.
struct RelativeGeometry {
  Vec3 gamma = Vec3::Zero();
  Vec3 rho = Vec3::Zero();
};

enum class Fidelity { Low, High };

constexpr double kLowFidelityArcsec = 192.0118;
constexpr double kHighFidelityArcsec = 26.7518;
constexpr double kMaxRangeKm = 500000.0;
constexpr double kIndividualCadenceTu = 0.02;

struct SensorSpec {
  double sigma_angle;        // rad, per angle
  double max_range;          // DU
  double individual_cadence; // TU

  static SensorSpec for_fidelity(Fidelity f, const CanonicalConstants& c) {
    return {arcsec_to_rad(f == Fidelity::Low ? kLowFidelityArcsec : kHighFidelityArcsec),
            kMaxRangeKm / c.du_km, kIndividualCadenceTu};
  }
};

struct PrimaryBody {
  Vec3 center = Vec3::Zero();  // DU, synodic frame
  double radius = 0.0;         // DU
};

PrimaryBody earth_body(const CanonicalConstants& c);
PrimaryBody moon_body(const CanonicalConstants& c);
std::array<PrimaryBody, 2> occluding_bodies(const CanonicalConstants& c);

RelativeGeometry relative_geometry(const Vec6& observer, const Vec6& target, double mu);

// Azimuth/elevation pair, both in [0, pi]. The azimuth compares the xy-plane
// projections of gamma and rho, the elevation the xz-plane projections.
// Throws on a vanishing projection.
Vec2 measure(const RelativeGeometry& geom);

// H = (dh/drho)(drho/dx); the velocity columns are identically zero. Throws
// when either angle sits at 0 or pi, where the arccos derivative is singular.
Eigen::Matrix<double, 2, 6> measurement_jacobian(const RelativeGeometry& geom);

struct ExclusionAngles {
  double theta;  // observer->body vs observer->target angle
  double omega;  // half-angle subtended by the body at the observer
};

ExclusionAngles exclusion_angles(const Vec6& observer, const Vec6& target,
                                 const PrimaryBody& body);

// Range gate plus the exclusion/occlusion inequality theta_p >= omega_p for
// both primaries. Degenerate geometry reports not-visible instead of throwing.
bool visibility(const Vec6& observer, const Vec6& target, const SensorSpec& sensor,
                const std::array<PrimaryBody, 2>& bodies, double mu);

// measure() plus independent zero-mean Gaussian noise per angle, clamped back
// into [0, pi]. Deterministic for a given generator state.
Vec2 synthesize_measurement(const RelativeGeometry& geom, const SensorSpec& sensor, Rng& rng);

}  // namespace sda

#endif  // SDA_MEASUREMENT_HPP
