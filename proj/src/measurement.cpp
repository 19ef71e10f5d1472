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

#include "sda/measurement.hpp"

#include <cmath>

#include "sda/errors.hpp"

namespace sda {

namespace {

constexpr double kProjectionTol = 1e-12;
constexpr double kSinTol = 1e-12;

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

// angle between the (u, v) projections of gamma and rho; the sine comes from
// the cross product so small angles stay fully accurate
struct PlanarAngle {
  double cosine;
  double sine;    // >= 0
  double g_norm;  // projected gamma norm
  double r_norm;  // projected rho norm

  double angle() const { return std::atan2(sine, cosine); }  // in [0, pi]
};

PlanarAngle planar_angle(double gu, double gv, double ru, double rv) {
  const double gn = std::hypot(gu, gv);
  const double rn = std::hypot(ru, rv);
  if (gn < kProjectionTol || rn < kProjectionTol) {
    throw numerical_error("degenerate measurement geometry (vanishing projection)");
  }
  return {clamp_unit((gu * ru + gv * rv) / (gn * rn)),
          std::abs(gu * rv - gv * ru) / (gn * rn), gn, rn};
}

}  // namespace

PrimaryBody earth_body(const CanonicalConstants& c) {
  return {Vec3(-c.mu, 0.0, 0.0), kEarthRadiusKm / c.du_km};
}

PrimaryBody moon_body(const CanonicalConstants& c) {
  return {Vec3(1.0 - c.mu, 0.0, 0.0), kMoonRadiusKm / c.du_km};
}

std::array<PrimaryBody, 2> occluding_bodies(const CanonicalConstants& c) {
  return {earth_body(c), moon_body(c)};
}

RelativeGeometry relative_geometry(const Vec6& observer, const Vec6& target, double mu) {
  RelativeGeometry g;
  g.gamma = Vec3(1.0 - mu, 0.0, 0.0) - position(observer);
  g.rho = position(target) - position(observer);
  return g;
}

Vec2 measure(const RelativeGeometry& geom) {
  const auto& g = geom.gamma;
  const auto& r = geom.rho;
  const auto axy = planar_angle(g[0], g[1], r[0], r[1]);
  const auto axz = planar_angle(g[0], g[2], r[0], r[2]);
  return Vec2(axy.angle(), axz.angle());
}

Eigen::Matrix<double, 2, 6> measurement_jacobian(const RelativeGeometry& geom) {
  const auto& g = geom.gamma;
  const auto& r = geom.rho;
  const auto axy = planar_angle(g[0], g[1], r[0], r[1]);
  const auto axz = planar_angle(g[0], g[2], r[0], r[2]);

  const double sin_a = axy.sine;
  const double sin_e = axz.sine;
  if (sin_a < kSinTol || sin_e < kSinTol) {
    throw numerical_error("measurement Jacobian singular (angle at 0 or pi)");
  }

  // d arccos(c)/d rho_j = -(1/sin) * dc/d rho_j with
  // dc/d rho_u = gamma_u/(g r) - c rho_u / r^2 on the projected components.
  Eigen::Matrix<double, 2, 6> h = Eigen::Matrix<double, 2, 6>::Zero();
  {
    const double gr = axy.g_norm * axy.r_norm;
    const double r2 = axy.r_norm * axy.r_norm;
    h(0, 0) = -(g[0] / gr - axy.cosine * r[0] / r2) / sin_a;
    h(0, 1) = -(g[1] / gr - axy.cosine * r[1] / r2) / sin_a;
  }
  {
    const double gr = axz.g_norm * axz.r_norm;
    const double r2 = axz.r_norm * axz.r_norm;
    h(1, 0) = -(g[0] / gr - axz.cosine * r[0] / r2) / sin_e;
    h(1, 2) = -(g[2] / gr - axz.cosine * r[2] / r2) / sin_e;
  }
  return h;
}

ExclusionAngles exclusion_angles(const Vec6& observer, const Vec6& target,
                                 const PrimaryBody& body) {
  const Vec3 gamma_p = body.center - position(observer);
  const Vec3 rho = position(target) - position(observer);
  const double gp = gamma_p.norm();
  const double rn = rho.norm();
  if (gp <= body.radius) {
    throw numerical_error("observer inside a primary body");
  }
  if (rn < kProjectionTol) {
    throw numerical_error("degenerate geometry: target coincides with observer");
  }
  const double theta = std::acos(clamp_unit(gamma_p.dot(rho) / (gp * rn)));
  // the tangent-line angle, exactly as printed:
  // omega = arctan( (r/g) sqrt(g^2 - r^2) / (g - r^2/g) )
  const double rp = body.radius;
  const double omega = std::atan((rp / gp) * std::sqrt(gp * gp - rp * rp) /
                                 (gp - rp * rp / gp));
  return {theta, omega};
}

bool visibility(const Vec6& observer, const Vec6& target, const SensorSpec& sensor,
                const std::array<PrimaryBody, 2>& bodies, double mu) {
  (void)mu;
  const Vec3 rho = position(target) - position(observer);
  const double range = rho.norm();
  if (range > sensor.max_range) return false;
  try {
    for (const auto& body : bodies) {
      const auto ex = exclusion_angles(observer, target, body);
      if (ex.theta < ex.omega) return false;
    }
  } catch (const Error&) {
    return false;  // degenerate geometry is not visible
  }
  return true;
}

Vec2 synthesize_measurement(const RelativeGeometry& geom, const SensorSpec& sensor, Rng& rng) {
  Vec2 m = measure(geom);
  m[0] += sensor.sigma_angle * rng.normal();
  m[1] += sensor.sigma_angle * rng.normal();
  m[0] = std::clamp(m[0], 0.0, M_PI);
  m[1] = std::clamp(m[1], 0.0, M_PI);
  return m;
}

}  // namespace sda
