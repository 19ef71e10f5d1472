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

#include "sda/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "sda/errors.hpp"

namespace sda {

namespace {

using nlohmann::json;

class FitnessCache {
 public:
  explicit FitnessCache(bool enabled) : enabled_(enabled) {}

  double get_or_eval(const ConstellationGenome& g, const FitnessFn& fitness) {
    if (!enabled_) {
      ++misses_;
      return fitness(g);
    }
    const std::string key = g.key();
    auto it = map_.find(key);
    if (it != map_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
    const double v = fitness(g);
    map_.emplace(key, v);
    return v;
  }

  uint64_t hits() const { return hits_; }
  uint64_t misses() const { return misses_; }

 private:
  bool enabled_;
  std::unordered_map<std::string, double> map_;
  uint64_t hits_ = 0;
  uint64_t misses_ = 0;
};

ConstellationGenome random_genome(int n_observers, int n_slots, Rng& rng) {
  std::vector<int> raw(n_observers);
  for (int i = 0; i < n_observers; ++i) raw[i] = static_cast<int>(rng.uniform_below(n_slots));
  return repair(std::move(raw), n_observers, n_slots, rng);
}

// Stochastic universal sampling over linear rank weights: the best of P
// genomes gets weight P, the worst weight 1.
std::vector<int> select_parents(const std::vector<double>& fitness,
                                const std::vector<int>& order, int count, Rng& rng) {
  const int p = static_cast<int>(fitness.size());
  std::vector<double> weight(p);
  for (int rank = 0; rank < p; ++rank) weight[order[rank]] = static_cast<double>(p - rank);
  double total = 0.0;
  for (double w : weight) total += w;

  std::vector<int> parents;
  parents.reserve(count);
  const double stride = total / count;
  double pointer = rng.uniform01() * stride;
  double cum = 0.0;
  int idx = 0;
  for (int j = 0; j < count; ++j) {
    const double target = pointer + j * stride;
    while (idx < p - 1 && cum + weight[idx] < target) {
      cum += weight[idx];
      ++idx;
    }
    parents.push_back(idx);
  }
  return parents;
}

// Uniform mix of the parents' slot sets: shared slots always survive, each
// exclusive slot joins with probability one half, then the cardinality is
// repaired from the symmetric difference.
ConstellationGenome set_crossover(const ConstellationGenome& a, const ConstellationGenome& b,
                                  int n_observers, Rng& rng) {
  std::unordered_set<int> in_a(a.slots.begin(), a.slots.end());
  std::unordered_set<int> in_b(b.slots.begin(), b.slots.end());
  std::vector<int> child;
  std::vector<int> sym_out;  // symmetric-difference slots left out of the mix
  for (int s : a.slots) {
    if (in_b.count(s)) {
      child.push_back(s);
    } else if (rng.uniform01() < 0.5) {
      child.push_back(s);
    } else {
      sym_out.push_back(s);
    }
  }
  for (int s : b.slots) {
    if (in_a.count(s)) continue;
    if (rng.uniform01() < 0.5) {
      child.push_back(s);
    } else {
      sym_out.push_back(s);
    }
  }
  while (static_cast<int>(child.size()) > n_observers) {
    const std::size_t drop = rng.uniform_below(child.size());
    child.erase(child.begin() + drop);
  }
  while (static_cast<int>(child.size()) < n_observers && !sym_out.empty()) {
    const std::size_t add = rng.uniform_below(sym_out.size());
    child.push_back(sym_out[add]);
    sym_out.erase(sym_out.begin() + add);
  }
  ConstellationGenome g{std::move(child)};
  std::sort(g.slots.begin(), g.slots.end());
  return g;
}

ConstellationGenome mutate(const ConstellationGenome& g, int n_slots, Rng& rng) {
  std::unordered_set<int> used(g.slots.begin(), g.slots.end());
  if (static_cast<int>(used.size()) >= n_slots) return g;  // nothing unused
  ConstellationGenome out = g;
  const std::size_t victim = rng.uniform_below(out.slots.size());
  for (;;) {
    const int candidate = static_cast<int>(rng.uniform_below(n_slots));
    if (!used.count(candidate)) {
      out.slots[victim] = candidate;
      break;
    }
  }
  std::sort(out.slots.begin(), out.slots.end());
  return out;
}

json rng_state_json(const Rng& rng) {
  json arr = json::array();
  for (uint64_t w : rng.state()) arr.push_back(w);
  return arr;
}

void restore_rng_state(Rng& rng, const json& arr) {
  std::array<uint64_t, 4> s{};
  for (int i = 0; i < 4; ++i) s[i] = arr.at(i).get<uint64_t>();
  rng.set_state(s);
}

uint64_t population_digest(const std::vector<ConstellationGenome>& pop) {
  uint64_t h = 0x504f5055ULL;
  for (const auto& g : pop) {
    for (int s : g.slots) h = hash_combine(h, static_cast<uint64_t>(s));
  }
  return h;
}

}  // namespace

std::string ConstellationGenome::key() const {
  std::string k;
  for (int s : slots) {
    k += std::to_string(s);
    k += ',';
  }
  return k;
}

ConstellationGenome repair(std::vector<int> candidate, int n_observers, int n_slots, Rng& rng) {
  if (n_observers < 1) throw config_error("need at least one observer");
  if (n_slots < n_observers) {
    throw infeasible_error("fewer slots (" + std::to_string(n_slots) + ") than observers (" +
                           std::to_string(n_observers) + ")");
  }
  std::vector<int> unique;
  std::unordered_set<int> seen;
  for (int s : candidate) {
    if (s < 0 || s >= n_slots) continue;  // out-of-range entries are dropped
    if (seen.insert(s).second) unique.push_back(s);
  }
  while (static_cast<int>(unique.size()) > n_observers) {
    const std::size_t drop = rng.uniform_below(unique.size());
    seen.erase(unique[drop]);
    unique.erase(unique.begin() + drop);
  }
  while (static_cast<int>(unique.size()) < n_observers) {
    const int candidate_slot = static_cast<int>(rng.uniform_below(n_slots));
    if (seen.insert(candidate_slot).second) unique.push_back(candidate_slot);
  }
  std::sort(unique.begin(), unique.end());
  return {std::move(unique)};
}

uint64_t binomial_coefficient(int n, int k, uint64_t saturate_at) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at each step, and the running
    // value C(n-k+i, i) never decreases, so the early-out is sound
    const uint64_t numer = static_cast<uint64_t>(n - k + i);
    if (result > std::numeric_limits<uint64_t>::max() / numer) return saturate_at + 1;
    result = result * numer / i;
    if (result > saturate_at) return saturate_at + 1;
  }
  return result;
}

ExhaustiveResult exhaustive_search(int n_slots, int n_observers, const FitnessFn& fitness,
                                   uint64_t cap) {
  if (n_slots < n_observers || n_observers < 1) {
    throw infeasible_error("exhaustive search needs 1 <= N <= |J|");
  }
  const uint64_t combos = binomial_coefficient(n_slots, n_observers, cap);
  if (combos > cap) {
    throw config_error("combination count exceeds the exhaustive-search cap of " +
                       std::to_string(cap));
  }

  ExhaustiveResult result;
  result.best_fitness = std::numeric_limits<double>::infinity();
  std::vector<int> combo(n_observers);
  for (int i = 0; i < n_observers; ++i) combo[i] = i;
  for (;;) {
    ConstellationGenome g{combo};
    const double f = fitness(g);
    result.table.emplace_back(g, f);
    if (f < result.best_fitness) {
      result.best_fitness = f;
      result.best = g;
    }
    // next lexicographic combination
    int i = n_observers - 1;
    while (i >= 0 && combo[i] == n_slots - n_observers + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < n_observers; ++j) combo[j] = combo[j - 1] + 1;
  }
  return result;
}

GAResult optimize(int n_slots, int n_observers, const FitnessFn& fitness, const GAConfig& cfg) {
  if (n_observers < 1) throw config_error("need at least one observer");
  if (n_slots < n_observers) {
    throw infeasible_error("fewer slots (" + std::to_string(n_slots) + ") than observers (" +
                           std::to_string(n_observers) + ")");
  }
  if (cfg.population < 2) throw config_error("population must be at least 2");
  if (cfg.crossover_fraction < 0.0 || cfg.crossover_fraction > 1.0) {
    throw config_error("crossover fraction must lie in [0, 1]");
  }

  FitnessCache cache(cfg.use_cache);
  GAResult result;

  // Small feasible sets are simply enumerated.
  const uint64_t combos = binomial_coefficient(n_slots, n_observers,
                                               static_cast<uint64_t>(cfg.population));
  if (combos <= static_cast<uint64_t>(cfg.population)) {
    const auto ex = exhaustive_search(n_slots, n_observers,
                                      [&](const ConstellationGenome& g) {
                                        return cache.get_or_eval(g, fitness);
                                      });
    result.best = ex.best;
    result.best_fitness = ex.best_fitness;
    result.history = {ex.best_fitness};
    result.generations = 1;
    result.exhausted = true;
    result.cache_hits = cache.hits();
    result.cache_misses = cache.misses();
    return result;
  }

  const int max_generations =
      cfg.max_generations > 0 ? cfg.max_generations : 100 * n_slots;
  const int elite_count =
      cfg.elite_count > 0 ? cfg.elite_count
                          : static_cast<int>(std::ceil(0.05 * cfg.population));

  Rng rng(cfg.seed);
  std::vector<ConstellationGenome> population;
  std::vector<double> fit;
  int start_generation = 0;
  int last_improvement_gen = 0;
  double best_seen = std::numeric_limits<double>::infinity();

  if (!cfg.resume_from.empty()) {
    std::ifstream in(cfg.resume_from);
    if (!in) throw config_error("cannot open checkpoint: " + cfg.resume_from);
    json ck = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (ck.is_discarded()) throw config_error("malformed checkpoint: " + cfg.resume_from);
    if (ck.value("finished", false)) {
      throw config_error("checkpoint describes a finished run: " + cfg.resume_from);
    }
    start_generation = ck.at("generation").get<int>() + 1;
    // the stored population is the one bred for the next generation
    for (const auto& slots : ck.at("population")) {
      ConstellationGenome g;
      for (const auto& s : slots) g.slots.push_back(s.get<int>());
      population.push_back(std::move(g));
    }
    restore_rng_state(rng, ck.at("rng_state"));
    result.history = ck.at("history").get<std::vector<double>>();
    best_seen = ck.at("best").at("fitness").get<double>();
    result.best.slots = ck.at("best").at("slots").get<std::vector<int>>();
    last_improvement_gen = ck.at("last_improvement_generation").get<int>();
  } else {
    population.reserve(cfg.population);
    for (int i = 0; i < cfg.population; ++i) {
      population.push_back(random_genome(n_observers, n_slots, rng));
    }
  }

  for (int gen = start_generation; gen < max_generations; ++gen) {
    fit.assign(population.size(), 0.0);
    for (std::size_t i = 0; i < population.size(); ++i) {
      fit[i] = cache.get_or_eval(population[i], fitness);
    }

    std::vector<int> order(population.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (fit[a] != fit[b]) return fit[a] < fit[b];
      return population[a].slots < population[b].slots;
    });

    const double gen_best = fit[order[0]];
    if (gen_best < best_seen - cfg.stall_tolerance) last_improvement_gen = gen;
    if (gen_best < best_seen) {
      best_seen = gen_best;
      result.best = population[order[0]];
    }
    result.history.push_back(best_seen);
    result.generations = gen + 1;

    const bool stop = (gen - last_improvement_gen >= cfg.stall_generations) ||
                      (gen + 1 >= max_generations);

    std::vector<ConstellationGenome> next;
    if (!stop) {
      const int n_children = cfg.population - elite_count;
      const int n_crossover =
          static_cast<int>(std::lround(cfg.crossover_fraction * n_children));
      const int n_mutation = n_children - n_crossover;
      const auto parents = select_parents(fit, order, 2 * n_crossover + n_mutation, rng);

      next.reserve(cfg.population);
      for (int e = 0; e < elite_count; ++e) next.push_back(population[order[e]]);
      int pi = 0;
      for (int i = 0; i < n_crossover; ++i) {
        const auto& pa = population[parents[pi++]];
        const auto& pb = population[parents[pi++]];
        next.push_back(set_crossover(pa, pb, n_observers, rng));
      }
      for (int i = 0; i < n_mutation; ++i) {
        next.push_back(mutate(population[parents[pi++]], n_slots, rng));
      }
    }

    if (!cfg.checkpoint_dir.empty()) {
      // the stored population and RNG state are the post-breeding ones, so a
      // resumed run continues exactly where this one would have
      json ck;
      ck["generation"] = gen;
      ck["finished"] = stop;
      ck["last_improvement_generation"] = last_improvement_gen;
      ck["best"] = {{"fitness", best_seen}, {"slots", result.best.slots}};
      if (!cfg.slot_labels.empty()) {
        json labels = json::array();
        for (int s : result.best.slots) {
          labels.push_back(s < static_cast<int>(cfg.slot_labels.size())
                               ? cfg.slot_labels[s]
                               : std::to_string(s));
        }
        ck["best"]["slot_labels"] = labels;
      }
      const auto& stored = stop ? population : next;
      json pop = json::array();
      for (const auto& g : stored) pop.push_back(g.slots);
      ck["population"] = pop;
      ck["population_digest"] = population_digest(stored);
      ck["rng_state"] = rng_state_json(rng);
      ck["history"] = result.history;
      const std::string path =
          cfg.checkpoint_dir + "/checkpoint_gen" + std::to_string(gen) + ".json";
      std::ofstream out(path);
      if (!out) throw config_error("cannot write checkpoint: " + path);
      out << ck.dump(2) << "\n";
    }

    if (stop) break;
    population = std::move(next);
  }

  result.best_fitness = best_seen;
  result.cache_hits = cache.hits();
  result.cache_misses = cache.misses();
  return result;
}

}  // namespace sda
