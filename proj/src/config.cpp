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

#include "sda/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

#include "sda/io.hpp"
#include "sda/measurement.hpp"

namespace sda {

double RunConfig::sigma_angle_rad() const {
  if (sigma_angle_arcsec >= 0.0) return arcsec_to_rad(sigma_angle_arcsec);
  if (fidelity == "low") return arcsec_to_rad(kLowFidelityArcsec);
  if (fidelity == "high") return arcsec_to_rad(kHighFidelityArcsec);
  throw config_error("sensor.fidelity must be 'low' or 'high', got '" + fidelity + "'");
}

IntegratorConfig RunConfig::integrator() const {
  IntegratorConfig c;
  c.abs_tol = abs_tol;
  c.rel_tol = rel_tol;
  c.max_step = max_step_tu;
  return c;
}

namespace {

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw config_error("expected a boolean, got '" + v + "'");
}

uint64_t parse_u64(const std::string& v) {
  try {
    return std::stoull(v);
  } catch (...) {
    throw config_error("expected an unsigned integer, got '" + v + "'");
  }
}

int parse_int(const std::string& v) {
  try {
    return std::stoi(v);
  } catch (...) {
    throw config_error("expected an integer, got '" + v + "'");
  }
}

double parse_num(const std::string& v) {
  const auto parsed = parse_double(v);
  if (!parsed) throw config_error("expected a number, got '" + v + "'");
  return *parsed;
}

std::vector<std::string> parse_list(const std::string& v) {
  // comma-separated, used both for TOML arrays and CLI overrides
  std::vector<std::string> items;
  for (auto& cell : split_csv_line(v)) {
    if (!cell.empty()) items.push_back(cell);
  }
  return items;
}

std::string strip_quotes(const std::string& v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\''))) {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct KeyHandler {
  Setter set;
  Getter get;
};

const std::map<std::string, KeyHandler>& key_table() {
  static const std::map<std::string, KeyHandler> table = [] {
    std::map<std::string, KeyHandler> t;
    auto str = [&t](const char* key, std::string RunConfig::* field) {
      t[key] = {[field](RunConfig& c, const std::string& v) { c.*field = strip_quotes(v); },
                [field](const RunConfig& c) { return c.*field; }};
    };
    auto num = [&t](const char* key, double RunConfig::* field) {
      t[key] = {[field](RunConfig& c, const std::string& v) { c.*field = parse_num(v); },
                [field](const RunConfig& c) { return format_g9(c.*field); }};
    };
    auto integer = [&t](const char* key, int RunConfig::* field) {
      t[key] = {[field](RunConfig& c, const std::string& v) { c.*field = parse_int(v); },
                [field](const RunConfig& c) { return std::to_string(c.*field); }};
    };
    auto u64 = [&t](const char* key, uint64_t RunConfig::* field) {
      t[key] = {[field](RunConfig& c, const std::string& v) { c.*field = parse_u64(v); },
                [field](const RunConfig& c) { return std::to_string(c.*field); }};
    };
    auto boolean = [&t](const char* key, bool RunConfig::* field) {
      t[key] = {[field](RunConfig& c, const std::string& v) { c.*field = parse_bool(v); },
                [field](const RunConfig& c) { return (c.*field) ? "true" : "false"; }};
    };

    str("run.catalog", &RunConfig::catalog);
    str("run.slots", &RunConfig::slots);
    str("run.targets", &RunConfig::targets);
    str("run.constellation", &RunConfig::constellation);
    str("run.output_dir", &RunConfig::output_dir);
    str("run.procedure", &RunConfig::procedure);
    str("run.stp", &RunConfig::stp);
    str("run.target_id", &RunConfig::target_id);
    str("run.sigma_targets", &RunConfig::sigma_targets);
    integer("run.n_observers", &RunConfig::n_observers);
    num("run.horizon_tu", &RunConfig::horizon_tu);
    num("run.sigma_dyn", &RunConfig::sigma_dyn);
    integer("run.slots_per_orbit", &RunConfig::slots_per_orbit);
    num("run.si_max", &RunConfig::si_max);
    num("run.period_max_tu", &RunConfig::period_max_tu);
    u64("run.seed", &RunConfig::seed);
    integer("run.seeds", &RunConfig::seeds);
    integer("run.threads", &RunConfig::threads);
    num("run.init_perturbation_scale", &RunConfig::init_perturbation_scale);
    boolean("run.include_transfers", &RunConfig::include_transfers);
    boolean("run.verify_catalog", &RunConfig::verify_catalog);
    boolean("run.random_phase", &RunConfig::random_phase);
    num("run.failure_penalty_km", &RunConfig::failure_penalty_km);
    num("run.dro_split_tu", &RunConfig::dro_split_tu);
    integer("run.subsample", &RunConfig::subsample);

    str("sensor.fidelity", &RunConfig::fidelity);
    num("sensor.sigma_angle_arcsec", &RunConfig::sigma_angle_arcsec);
    num("sensor.max_range_km", &RunConfig::max_range_km);
    num("sensor.individual_cadence_tu", &RunConfig::individual_cadence_tu);

    num("integrator.abs_tol", &RunConfig::abs_tol);
    num("integrator.rel_tol", &RunConfig::rel_tol);
    num("integrator.max_step_tu", &RunConfig::max_step_tu);

    integer("ga.population", &RunConfig::population);
    num("ga.crossover_fraction", &RunConfig::crossover_fraction);
    integer("ga.max_generations", &RunConfig::max_generations);
    integer("ga.stall_generations", &RunConfig::stall_generations);
    num("ga.stall_tolerance_km", &RunConfig::stall_tolerance_km);
    integer("ga.elite_count", &RunConfig::elite_count);
    str("ga.checkpoint_dir", &RunConfig::checkpoint_dir);
    str("ga.resume_from", &RunConfig::resume_from);
    boolean("ga.exhaustive_check", &RunConfig::exhaustive_check);
    u64("ga.exhaustive_cap", &RunConfig::exhaustive_cap);

    str("report.results_dir", &RunConfig::results_dir);
    t["report.hist_edges_km"] = {
        [](RunConfig& c, const std::string& v) {
          c.hist_edges_km.clear();
          for (const auto& item : parse_list(v)) c.hist_edges_km.push_back(parse_num(item));
        },
        [](const RunConfig& c) {
          std::string out;
          for (double e : c.hist_edges_km) {
            if (!out.empty()) out += ',';
            out += format_g9(e);
          }
          return out;
        }};
    t["report.hist_groups"] = {
        [](RunConfig& c, const std::string& v) {
          c.hist_groups.clear();
          for (const auto& item : parse_list(v)) c.hist_groups.push_back(strip_quotes(item));
        },
        [](const RunConfig& c) {
          std::string out;
          for (const auto& g : c.hist_groups) {
            if (!out.empty()) out += ',';
            out += g;
          }
          return out;
        }};
    return t;
  }();
  return table;
}

}  // namespace

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = key_table();
  auto it = table.find(key);
  if (it == table.end()) throw config_error("unknown configuration key: '" + key + "'");
  it->second.set(cfg, trim(value));
}

std::string get_config_value(const RunConfig& cfg, const std::string& key) {
  const auto& table = key_table();
  auto it = table.find(key);
  if (it == table.end()) throw config_error("unknown configuration key: '" + key + "'");
  return it->second.get(cfg);
}

RunConfig load_config(const std::string& toml_path) {
  std::ifstream in(toml_path);
  if (!in) throw config_error("cannot open config file: " + toml_path);

  RunConfig cfg;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comments outside quotes
    bool in_quote = false;
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char ch = line[i];
      if (in_quote) {
        if (ch == quote) in_quote = false;
      } else if (ch == '"' || ch == '\'') {
        in_quote = true;
        quote = ch;
      } else if (ch == '#') {
        line.resize(i);
        break;
      }
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;

    if (stripped.front() == '[') {
      if (stripped.back() != ']') {
        throw config_error(toml_path + ":" + std::to_string(lineno) + ": malformed section header");
      }
      section = trim(stripped.substr(1, stripped.size() - 2));
      continue;
    }

    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw config_error(toml_path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    // arrays: strip the brackets, the list parser handles the commas
    if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
      value = trim(value.substr(1, value.size() - 2));
    }
    const std::string full_key = section.empty() ? key : section + "." + key;
    try {
      set_config_value(cfg, full_key, value);
    } catch (const Error& e) {
      throw config_error(toml_path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  apply_env_overrides(cfg);
  return cfg;
}

void apply_env_overrides(RunConfig& cfg) {
  if (const char* env_seed = std::getenv("SDA_SEED")) {
    cfg.seed = parse_u64(env_seed);
  }
}

}  // namespace sda
