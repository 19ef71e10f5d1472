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

#ifndef SDA_CONSTANTS_HPP
#define SDA_CONSTANTS_HPP

#include <cmath>

#include "sda/errors.hpp"

namespace sda {

// Earth-Moon CR3BP canonical units. All library quantities are
// nondimensional (DU, TU, DU/TU) unless a name says otherwise.
struct CanonicalConstants {
  double mu = 0.0121506;     // mass ratio m2/(m1+m2)
  double du_km = 389703.0;   // distance unit, km
  double tu_s = 382981.0;    // time unit, s

  void validate() const {
    if (!(mu > 0.0 && mu < 0.5)) throw config_error("mass ratio must be in (0, 0.5)");
    if (!(du_km > 0.0)) throw config_error("distance unit must be positive");
    if (!(tu_s > 0.0)) throw config_error("time unit must be positive");
  }

  double km_to_du(double km) const { return km / du_km; }
  double du_to_km(double du) const { return du * du_km; }
  // DU/TU -> km/s
  double duptu_to_kmps(double v) const { return v * du_km / tu_s; }
};

inline double arcsec_to_rad(double arcsec) {
  return arcsec * M_PI / (180.0 * 3600.0);
}

constexpr double kEarthRadiusKm = 6378.1;
constexpr double kMoonRadiusKm = 1737.1;

}  // namespace sda

#endif  // SDA_CONSTANTS_HPP
