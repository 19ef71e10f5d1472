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

#include "sda/cr3bp.hpp"

#include <cmath>

namespace sda {

namespace {

void check_not_singular(const PrimaryDistances& d) {
  if (d.r1 < kSingularityRadius || d.r2 < kSingularityRadius) {
    throw numerical_error("state inside a primary body (r1=" +
                          std::to_string(d.r1) + ", r2=" + std::to_string(d.r2) + ")");
  }
}

}  // namespace

PrimaryDistances primary_distances(const Vec6& s, const CanonicalConstants& c) {
  const double x = s[0], y = s[1], z = s[2];
  const double dx1 = x + c.mu;
  const double dx2 = x - (1.0 - c.mu);
  return {std::sqrt(dx1 * dx1 + y * y + z * z),
          std::sqrt(dx2 * dx2 + y * y + z * z)};
}

double pseudo_potential(const Vec6& s, const CanonicalConstants& c) {
  const auto d = primary_distances(s, c);
  check_not_singular(d);
  const double x = s[0], y = s[1];
  return 0.5 * (x * x + y * y) + (1.0 - c.mu) / d.r1 + c.mu / d.r2;
}

Vec6 eom(const Vec6& s, const CanonicalConstants& c) {
  const auto d = primary_distances(s, c);
  check_not_singular(d);
  const double x = s[0], y = s[1], z = s[2];
  const double vx = s[3], vy = s[4], vz = s[5];
  const double mu = c.mu;

  const double r13 = d.r1 * d.r1 * d.r1;
  const double r23 = d.r2 * d.r2 * d.r2;
  const double c1 = (1.0 - mu) / r13;
  const double c2 = mu / r23;

  const double ux = x - c1 * (x + mu) - c2 * (x - (1.0 - mu));
  const double uy = y - c1 * y - c2 * y;
  const double uz = -c1 * z - c2 * z;

  Vec6 out;
  out << vx, vy, vz, 2.0 * vy + ux, -2.0 * vx + uy, uz;
  return out;
}

Mat6 eom_jacobian(const Vec6& s, const CanonicalConstants& c) {
  const auto d = primary_distances(s, c);
  check_not_singular(d);
  const double mu = c.mu;

  Mat6 a = Mat6::Zero();
  a.block<3, 3>(0, 3).setIdentity();
  a(3, 4) = 2.0;
  a(4, 3) = -2.0;

  // Hessian of U: sum over primaries of m * (3 d d^T / r^5 - I / r^3),
  // plus the centrifugal identity on the x,y diagonal.
  Mat3 hess = Mat3::Zero();
  const Vec3 d1(s[0] + mu, s[1], s[2]);
  const Vec3 d2(s[0] - (1.0 - mu), s[1], s[2]);
  const struct {
    double m;
    const Vec3& dv;
    double r;
  } terms[2] = {{1.0 - mu, d1, d.r1}, {mu, d2, d.r2}};
  for (const auto& t : terms) {
    const double r3 = t.r * t.r * t.r;
    const double r5 = r3 * t.r * t.r;
    hess += t.m * (3.0 / r5 * (t.dv * t.dv.transpose()) - Mat3::Identity() / r3);
  }
  hess(0, 0) += 1.0;
  hess(1, 1) += 1.0;

  a.block<3, 3>(3, 0) = hess;
  return a;
}

double jacobi_constant(const Vec6& s, const CanonicalConstants& c) {
  const double v2 = s.tail<3>().squaredNorm();
  return 2.0 * pseudo_potential(s, c) - v2;
}

}  // namespace sda
