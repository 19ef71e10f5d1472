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

#ifndef SDA_OPTIMIZER_HPP
#define SDA_OPTIMIZER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sda/rng.hpp"

namespace sda {

// A constellation: N distinct slot indices, kept sorted so equal sets compare
// equal and cache keys are canonical.
struct ConstellationGenome {
  std::vector<int> slots;

  bool operator==(const ConstellationGenome& other) const { return slots == other.slots; }
  std::string key() const;
};

struct GAConfig {
  int population = 50;
  double crossover_fraction = 0.8;
  int max_generations = 0;  // 0: defaults to 100 * number of slots
  int stall_generations = 50;
  double stall_tolerance = 1e-6;  // km of best-fitness improvement
  int elite_count = 0;            // 0: defaults to ceil(0.05 * population)
  uint64_t seed = 1;
  bool use_cache = true;
  std::string checkpoint_dir;     // empty: no checkpoints
  std::string resume_from;        // path to a checkpoint JSON
  // labels for checkpoint readability (orbit id + phase), indexed by slot
  std::vector<std::string> slot_labels;
};

using FitnessFn = std::function<double(const ConstellationGenome&)>;

struct GAResult {
  ConstellationGenome best;
  double best_fitness = 0.0;
  std::vector<double> history;  // best-so-far per generation, non-increasing
  int generations = 0;
  uint64_t cache_hits = 0;
  uint64_t cache_misses = 0;
  bool exhausted = false;  // the feasible set was small enough to enumerate
};

// Deduplicate, then drop or add uniformly at random until exactly
// n_observers distinct in-range indices remain.
ConstellationGenome repair(std::vector<int> candidate, int n_observers, int n_slots, Rng& rng);

// Solve the N-of-|J| placement problem by a seeded genetic algorithm:
// stochastic-uniform selection over linearly ranked fitness, set crossover
// with cardinality repair, single-slot mutation, elitism.
GAResult optimize(int n_slots, int n_observers, const FitnessFn& fitness, const GAConfig& cfg);

struct ExhaustiveResult {
  ConstellationGenome best;
  double best_fitness = 0.0;
  std::vector<std::pair<ConstellationGenome, double>> table;
};

// Evaluates every N-subset (lexicographic order). Errors when the
// combination count exceeds the cap.
ExhaustiveResult exhaustive_search(int n_slots, int n_observers, const FitnessFn& fitness,
                                   uint64_t cap = 100000);

uint64_t binomial_coefficient(int n, int k, uint64_t saturate_at);

}  // namespace sda

#endif  // SDA_OPTIMIZER_HPP
