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

#ifndef CATGEN_CORRECTOR_HPP
#define CATGEN_CORRECTOR_HPP

#include <optional>

#include "sda/integrate.hpp"

namespace catgen {

using sda::CanonicalConstants;
using sda::IntegratorConfig;
using sda::Mat6;
using sda::Vec6;

struct StmResult {
  Vec6 state;
  Mat6 stm;
};

// State and state-transition matrix at time t, integrated jointly.
StmResult propagate_with_stm(const Vec6& s0, double t, const IntegratorConfig& cfg,
                             const CanonicalConstants& c);

struct PeriodicOrbit {
  Vec6 ic = Vec6::Zero();
  double period = 0.0;
  Mat6 monodromy = Mat6::Zero();
  double stability_index = 1.0;  // (|lambda_max| + 1/|lambda_max|) / 2
  double closure = 0.0;          // inf-norm of the final periodicity defect
  double min_r1 = 0.0;
  double min_r2 = 0.0;
};

// Free-period Newton refinement of a periodic-orbit guess: solves
// phi_T(s0) = s0 with the minimum-norm step over (s0, T).
std::optional<PeriodicOrbit> correct_periodic(const Vec6& guess, double period_guess,
                                              const IntegratorConfig& cfg,
                                              const CanonicalConstants& c,
                                              double tol = 1e-9, int max_iter = 20);

// Same, but the period is held fixed: finds the family member with exactly
// this period (families here are locally parameterized by period).
std::optional<PeriodicOrbit> correct_periodic_fixed(const Vec6& guess, double period,
                                                    const IntegratorConfig& cfg,
                                                    const CanonicalConstants& c,
                                                    double tol = 1e-9, int max_iter = 25);

double stability_index_of(const Mat6& monodromy);

// Unit vector spanning the stable eigenspace of the monodromy matrix.
std::optional<Vec6> stable_direction(const Mat6& monodromy);

}  // namespace catgen

#endif  // CATGEN_CORRECTOR_HPP
