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

#ifndef SDA_CR3BP_HPP
#define SDA_CR3BP_HPP

#include "sda/constants.hpp"
#include "sda/state.hpp"

namespace sda {

// Distance below which a state counts as colliding with a primary. The
// catalog excludes primary-intersecting orbits, so hitting this is an error
// rather than a silent blow-up.
constexpr double kSingularityRadius = 1e-6;

// Distances from the first (Earth) and second (Moon) primary.
struct PrimaryDistances {
  double r1;
  double r2;
};

PrimaryDistances primary_distances(const Vec6& s, const CanonicalConstants& c);

// U = (x^2 + y^2)/2 + (1-mu)/r1 + mu/r2
double pseudo_potential(const Vec6& s, const CanonicalConstants& c);

// Synodic-frame equations of motion:
//   xddot - 2 ydot = dU/dx,  yddot + 2 xdot = dU/dy,  zddot = dU/dz
Vec6 eom(const Vec6& s, const CanonicalConstants& c);

// A = df/dx: [0 I; Hess(U) Coriolis]
Mat6 eom_jacobian(const Vec6& s, const CanonicalConstants& c);

// C = 2U - v^2, conserved along exact trajectories; used as a propagation
// quality check.
double jacobi_constant(const Vec6& s, const CanonicalConstants& c);

}  // namespace sda

#endif  // SDA_CR3BP_HPP
