// Copyright 2026 The sleepcat Authors.
//
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

#ifndef SLEEPCAT_HARNESS_CONFIG_HPP
#define SLEEPCAT_HARNESS_CONFIG_HPP

#include <sleepcat/core.hpp>
#include <sleepcat/harness/format.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

/**
 * \file
 * \brief Experiment configuration: a flat `key = value` text file.
 *
 * Lines starting with `#` are comments. Lists are comma separated. Every key has a default that
 * depends on `experiment`; unknown keys are rejected. See README.md for the key reference.
 */

namespace sleepcat::harness {

using ConfigMap = std::map<std::string, std::string>;

enum class ExperimentKind { SleepingBanditSweep, GridSemiBandit, RestrictedExperts, FullInfoExperts, PairedStress };

inline std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::SleepingBanditSweep:
      return "sleeping-bandit-sweep";
    case ExperimentKind::GridSemiBandit:
      return "grid-semibandit";
    case ExperimentKind::RestrictedExperts:
      return "restricted-experts";
    case ExperimentKind::FullInfoExperts:
      return "fullinfo-experts";
    case ExperimentKind::PairedStress:
      return "paired-stress";
  }
  return "unknown";
}

inline ExperimentKind parse_experiment_kind(std::string_view name) {
  for (auto k : {ExperimentKind::SleepingBanditSweep, ExperimentKind::GridSemiBandit, ExperimentKind::RestrictedExperts,
                 ExperimentKind::FullInfoExperts, ExperimentKind::PairedStress}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown experiment: " + std::string(name));
}

inline const std::vector<std::string>& known_learners() {
  static const std::vector<std::string> names = {"SleepingCat", "SleepingCatBandit", "FullInfoFPL",
                                                 "BSFPL",       "CombBSFPL",         "Uniform"};
  return names;
}

/// Parses `key = value` lines. Later duplicates override earlier ones.
inline ConfigMap parse_config_text(std::string_view text) {
  ConfigMap map;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
    }
    auto key = trim(body.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(number) + ": empty key");
    map[std::string(key)] = std::string(trim(body.substr(eq + 1)));
  }
  return map;
}

inline ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

/// Applies one `key=value` override.
inline void apply_override(ConfigMap& map, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw std::invalid_argument("override must look like key=value");
  auto key = trim(assignment.substr(0, eq));
  if (key.empty()) throw std::invalid_argument("override has an empty key");
  map[std::string(key)] = std::string(trim(assignment.substr(eq + 1)));
}

inline std::string serialize_config(const ConfigMap& map) {
  std::string out;
  for (const auto& [key, value] : map) out += key + " = " + value + "\n";
  return out;
}

struct LearnerSpec {
  std::string name;
  std::string eta = "auto";     ///< auto | schedule name | number
  std::optional<double> beta;   ///< for the restricted-beta schedule
  std::optional<double> best_loss;  ///< comparator loss input of the full-information schedule
  std::string M = "auto";       ///< auto | integer
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::SleepingBanditSweep;
  long horizon = 10000;
  int arms = 5;
  int grid_rows = 3;
  int grid_cols = 3;
  std::string availability_model = "bernoulli";  ///< bernoulli | paired
  double availability_p = 0.9;
  std::string sweep_key = "none";  ///< none | p | arms
  std::vector<double> sweep_values;
  std::string loss_model = "random-walk";  ///< random-walk | paired-bernoulli
  double loss_sigma = 0.002;
  double loss_epsilon = 0.1;
  bool loss_shared = false;  ///< one loss sequence for all replicates of a sweep point
  std::vector<LearnerSpec> learners;
  std::string baseline_t0 = "auto";
  std::string baseline_gamma = "auto";
  std::string baseline_epsilon_floor = "auto";
  std::string baseline_uniform_mode = "random-walk";  ///< random-walk | exact-paths
  std::uint64_t seed = 1;
  int replicates = 20;
  std::string output_dir = "out";
  long trace_stride = 1;

  [[nodiscard]] bool is_grid() const { return experiment == ExperimentKind::GridSemiBandit; }

  /// The sweep values, or the single point p when nothing is swept.
  [[nodiscard]] std::vector<double> sweep_points() const {
    if (sweep_key == "none") return {availability_p};
    return sweep_values;
  }

  [[nodiscard]] const LearnerSpec* learner(std::string_view name) const {
    for (const auto& l : learners) {
      if (l.name == name) return &l;
    }
    return nullptr;
  }

  /// Defaults for an experiment family, as a key map.
  static ConfigMap defaults(ExperimentKind kind) {
    ConfigMap map = {
        {"experiment", std::string(to_string(kind))},
        {"horizon", "10000"},
        {"arms", "5"},
        {"grid.rows", "3"},
        {"grid.cols", "3"},
        {"availability.model", "bernoulli"},
        {"availability.p", "0.9"},
        {"sweep.key", "none"},
        {"sweep.values", ""},
        {"losses.model", "random-walk"},
        {"losses.sigma", "0.002"},
        {"losses.epsilon", "0.1"},
        {"losses.shared", "false"},
        {"baseline.t0", "auto"},
        {"baseline.gamma", "auto"},
        {"baseline.epsilon_floor", "auto"},
        {"baseline.uniform_mode", "random-walk"},
        {"seed", "1"},
        {"replicates", "20"},
        {"output.dir", "out"},
        {"output.trace_stride", "1"},
    };
    switch (kind) {
      case ExperimentKind::SleepingBanditSweep:
        map["sweep.key"] = "p";
        map["sweep.values"] = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
        map["learners"] = "SleepingCatBandit,BSFPL,Uniform";
        break;
      case ExperimentKind::GridSemiBandit:
        map["losses.shared"] = "true";
        map["learners"] = "SleepingCatBandit,CombBSFPL,Uniform";
        break;
      case ExperimentKind::RestrictedExperts:
        map["learners"] = "SleepingCat,Uniform";
        break;
      case ExperimentKind::FullInfoExperts:
        map["availability.p"] = "1";
        map["learners"] = "FullInfoFPL,Uniform";
        break;
      case ExperimentKind::PairedStress:
        map["availability.model"] = "paired";
        map["losses.model"] = "paired-bernoulli";
        map["sweep.key"] = "arms";
        map["sweep.values"] = "4,8,16";
        map["learners"] = "SleepingCat";
        break;
    }
    return map;
  }

  /// Resolves a user map over the experiment's defaults.
  static ExperimentConfig from_map(const ConfigMap& user) {
    const auto kind_it = user.find("experiment");
    if (kind_it == user.end()) throw std::invalid_argument("config is missing 'experiment'");
    ConfigMap map = defaults(parse_experiment_kind(kind_it->second));
    for (const auto& [key, value] : user) map[key] = value;

    ExperimentConfig c;
    c.experiment = parse_experiment_kind(map.at("experiment"));
    c.horizon = parse_long(map.at("horizon"), "horizon");
    c.arms = static_cast<int>(parse_long(map.at("arms"), "arms"));
    c.grid_rows = static_cast<int>(parse_long(map.at("grid.rows"), "grid.rows"));
    c.grid_cols = static_cast<int>(parse_long(map.at("grid.cols"), "grid.cols"));
    c.availability_model = map.at("availability.model");
    c.availability_p = parse_double(map.at("availability.p"), "availability.p");
    c.sweep_key = map.at("sweep.key");
    for (const auto& v : split(map.at("sweep.values"), ',')) c.sweep_values.push_back(parse_double(v, "sweep.values"));
    c.loss_model = map.at("losses.model");
    c.loss_sigma = parse_double(map.at("losses.sigma"), "losses.sigma");
    c.loss_epsilon = parse_double(map.at("losses.epsilon"), "losses.epsilon");
    c.loss_shared = parse_bool(map.at("losses.shared"), "losses.shared");
    c.baseline_t0 = map.at("baseline.t0");
    c.baseline_gamma = map.at("baseline.gamma");
    c.baseline_epsilon_floor = map.at("baseline.epsilon_floor");
    c.baseline_uniform_mode = map.at("baseline.uniform_mode");
    c.seed = parse_u64(map.at("seed"), "seed");
    c.replicates = static_cast<int>(parse_long(map.at("replicates"), "replicates"));
    c.output_dir = map.at("output.dir");
    c.trace_stride = parse_long(map.at("output.trace_stride"), "output.trace_stride");

    for (const auto& name : split(map.at("learners"), ',')) {
      if (std::find(known_learners().begin(), known_learners().end(), name) == known_learners().end()) {
        throw std::invalid_argument("unknown learner: " + name);
      }
      LearnerSpec spec;
      spec.name = name;
      c.learners.push_back(spec);
    }

    for (const auto& [key, value] : map) {
      if (key.rfind("learner.", 0) == 0) {
        const auto dot = key.find('.', 8);
        if (dot == std::string::npos) throw std::invalid_argument("malformed learner key: " + key);
        const std::string name = key.substr(8, dot - 8);
        const std::string field = key.substr(dot + 1);
        auto it = std::find_if(c.learners.begin(), c.learners.end(), [&](const auto& l) { return l.name == name; });
        if (it == c.learners.end()) throw std::invalid_argument("override for a learner not in 'learners': " + key);
        if (field == "eta") {
          it->eta = value;
        } else if (field == "beta") {
          it->beta = parse_double(value, key);
        } else if (field == "best_loss") {
          it->best_loss = parse_double(value, key);
        } else if (field == "M") {
          it->M = value;
        } else {
          throw std::invalid_argument("unknown learner field: " + key);
        }
      } else if (!map_has_default(key, c.experiment)) {
        throw std::invalid_argument("unknown config key: " + key);
      }
    }
    c.validate();
    return c;
  }

  /// Every resolved key; from_map(to_map()) reproduces the config.
  [[nodiscard]] ConfigMap to_map() const {
    ConfigMap map;
    map["experiment"] = std::string(to_string(experiment));
    map["horizon"] = std::to_string(horizon);
    map["arms"] = std::to_string(arms);
    map["grid.rows"] = std::to_string(grid_rows);
    map["grid.cols"] = std::to_string(grid_cols);
    map["availability.model"] = availability_model;
    map["availability.p"] = format_double(availability_p);
    map["sweep.key"] = sweep_key;
    std::string values;
    for (std::size_t i = 0; i < sweep_values.size(); ++i) values += (i ? "," : "") + format_double(sweep_values[i]);
    map["sweep.values"] = values;
    map["losses.model"] = loss_model;
    map["losses.sigma"] = format_double(loss_sigma);
    map["losses.epsilon"] = format_double(loss_epsilon);
    map["losses.shared"] = loss_shared ? "true" : "false";
    std::string names;
    for (std::size_t i = 0; i < learners.size(); ++i) {
      const auto& l = learners[i];
      names += (i ? "," : "") + l.name;
      map["learner." + l.name + ".eta"] = l.eta;
      map["learner." + l.name + ".M"] = l.M;
      if (l.beta) map["learner." + l.name + ".beta"] = format_double(*l.beta);
      if (l.best_loss) map["learner." + l.name + ".best_loss"] = format_double(*l.best_loss);
    }
    map["learners"] = names;
    map["baseline.t0"] = baseline_t0;
    map["baseline.gamma"] = baseline_gamma;
    map["baseline.epsilon_floor"] = baseline_epsilon_floor;
    map["baseline.uniform_mode"] = baseline_uniform_mode;
    map["seed"] = std::to_string(seed);
    map["replicates"] = std::to_string(replicates);
    map["output.dir"] = output_dir;
    map["output.trace_stride"] = std::to_string(trace_stride);
    return map;
  }

  void validate() const {
    if (horizon < 1) throw std::invalid_argument("horizon must be positive");
    if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
    if (learners.empty()) throw std::invalid_argument("learner list is empty");
    if (trace_stride < 1) throw std::invalid_argument("output.trace_stride must be positive");
    if (sweep_key != "none" && sweep_key != "p" && sweep_key != "arms") {
      throw std::invalid_argument("sweep.key must be none, p or arms");
    }
    if (sweep_key != "none" && sweep_values.empty()) throw std::invalid_argument("sweep.values is empty");
    if (sweep_key == "arms" && is_grid()) throw std::invalid_argument("grid experiments cannot sweep arms");
    for (double v : sweep_points()) {
      if (sweep_key == "arms" ? (v < 1 || v != static_cast<double>(static_cast<int>(v)))
                              : !(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("sweep value out of range: " + format_double(v));
      }
    }
    if (availability_model != "bernoulli" && availability_model != "paired") {
      throw std::invalid_argument("availability.model must be bernoulli or paired");
    }
    if (loss_model != "random-walk" && loss_model != "paired-bernoulli") {
      throw std::invalid_argument("losses.model must be random-walk or paired-bernoulli");
    }
    if (loss_model == "paired-bernoulli" && is_grid()) throw std::invalid_argument("paired losses need experts");
    if (baseline_uniform_mode != "random-walk" && baseline_uniform_mode != "exact-paths") {
      throw std::invalid_argument("baseline.uniform_mode must be random-walk or exact-paths");
    }
    if (!(loss_sigma >= 0.0)) throw std::invalid_argument("losses.sigma must be nonnegative");
    if (is_grid() && (grid_rows < 1 || grid_cols < 1 || grid_rows * grid_cols < 2)) {
      throw std::invalid_argument("grid needs at least two nodes");
    }
    if (!is_grid() && arms < 1) throw std::invalid_argument("arms must be positive");
  }

 private:
  static bool parse_bool(std::string_view text, std::string_view what) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw std::invalid_argument(std::string(what) + ": expected true or false");
  }

  static bool map_has_default(const std::string& key, ExperimentKind kind) {
    return key == "learners" || defaults(kind).contains(key);
  }
};

/// Named configurations reproducing the published experiments.
inline std::optional<std::string> preset_text(std::string_view name) {
  if (name == "fig2-left") {
    return "# 5 arms, each awake independently with probability p; semi-bandit feedback.\n"
           "experiment = sleeping-bandit-sweep\n"
           "horizon = 10000\n"
           "arms = 5\n"
           "sweep.key = p\n"
           "sweep.values = 0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1\n"
           "losses.sigma = 0.002\n"
           "learners = SleepingCatBandit,BSFPL,Uniform\n"
           "replicates = 20\n"
           "output.dir = out/fig2-left\n"
           "output.trace_stride = 50\n";
  }
  if (name == "fig2-middle" || name == "fig2-right") {
    const std::string side = name == "fig2-middle" ? "3" : "10";
    return "# Shortest paths on a " + side + "x" + side +
           " grid, each edge kept with probability 0.9.\n"
           "experiment = grid-semibandit\n"
           "horizon = 10000\n"
           "grid.rows = " + side + "\n" +
           "grid.cols = " + side + "\n" +
           "availability.p = 0.9\n"
           "losses.sigma = 0.002\n"
           "losses.shared = true\n"
           "learners = SleepingCatBandit,CombBSFPL,Uniform\n"
           "replicates = 20\n"
           "output.dir = out/" + std::string(name) + "\n" +
           "output.trace_stride = 10\n";
  }
  return std::nullopt;
}

inline std::vector<std::string> preset_names() { return {"fig2-left", "fig2-middle", "fig2-right"}; }

}  // namespace sleepcat::harness

#endif
