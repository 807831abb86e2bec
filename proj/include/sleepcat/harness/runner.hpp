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

#ifndef SLEEPCAT_HARNESS_RUNNER_HPP
#define SLEEPCAT_HARNESS_RUNNER_HPP

#include <sleepcat/baselines.hpp>
#include <sleepcat/core.hpp>
#include <sleepcat/decision_set.hpp>
#include <sleepcat/environments.hpp>
#include <sleepcat/evaluation.hpp>
#include <sleepcat/fpl.hpp>
#include <sleepcat/harness/config.hpp>
#include <sleepcat/harness/csv.hpp>
#include <sleepcat/harness/seeding.hpp>
#include <sleepcat/learners.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

/**
 * \file
 * \brief Drives learners through seeded environment realizations and evaluates their regret.
 *
 * One run point is a (sweep value, replicate) pair. The environment of a point is generated once
 * from its own streams and replayed to every learner, so all learners face the same decision sets
 * and losses. Every learner draws from its own perturbation and resampling streams.
 */

namespace sleepcat::harness {

using SeedMap = std::map<std::string, std::uint64_t>;

inline std::string perturbation_stream(const std::string& learner) { return "learner." + learner + ".perturbation"; }
inline std::string resampling_stream(const std::string& learner) { return "learner." + learner + ".resampling"; }

/// Seeds of every stream used by one run point.
inline SeedMap derive_point_seeds(const ExperimentConfig& config, double sweep_value, int replicate) {
  const std::string experiment(to_string(config.experiment));
  SeedMap seeds;
  seeds["losses"] = config.loss_shared ? derive_seed(config.seed, experiment, sweep_value, std::nullopt, "losses")
                                        : derive_seed(config.seed, experiment, sweep_value, replicate, "losses");
  seeds["availability"] = derive_seed(config.seed, experiment, sweep_value, replicate, "availability");
  for (const auto& l : config.learners) {
    seeds[perturbation_stream(l.name)] =
        derive_seed(config.seed, experiment, sweep_value, replicate, perturbation_stream(l.name));
    seeds[resampling_stream(l.name)] =
        derive_seed(config.seed, experiment, sweep_value, replicate, resampling_stream(l.name));
  }
  return seeds;
}

struct EnvironmentRealization {
  ProblemDims dims;
  std::vector<DecisionSet> sets;
  std::vector<LossVector> losses;
  double beta = 1.0;  ///< min_i P(i in D_t) when known in closed form
};

inline ProblemDims point_dims(const ExperimentConfig& config, double sweep_value) {
  if (config.is_grid()) return GridWorld(config.grid_rows, config.grid_cols).dims(config.horizon);
  const int d = config.sweep_key == "arms" ? static_cast<int>(sweep_value) : config.arms;
  return {d, 1, config.horizon};
}

inline double point_availability(const ExperimentConfig& config, double sweep_value) {
  return config.sweep_key == "p" ? sweep_value : config.availability_p;
}

inline EnvironmentRealization generate_environment(const ExperimentConfig& config, double sweep_value,
                                                   const SeedMap& seeds) {
  EnvironmentRealization env;
  env.dims = point_dims(config, sweep_value);
  env.dims.validate();
  const auto T = static_cast<std::size_t>(config.horizon);
  const double p = point_availability(config, sweep_value);
  Rng loss_rng(seeds.at("losses"));
  Rng avail_rng(seeds.at("availability"));

  env.sets.reserve(T);
  if (config.is_grid()) {
    auto world = std::make_shared<const GridWorld>(config.grid_rows, config.grid_cols, p);
    for (std::size_t t = 0; t < T; ++t) env.sets.push_back(draw_grid_set(world, avail_rng));
    env.beta = 0.0;  // reachability probabilities have no closed form
  } else {
    const auto model = config.availability_model == "paired" ? AvailabilityModel::paired(env.dims.d)
                                                             : AvailabilityModel::independent(env.dims.d, p);
    for (std::size_t t = 0; t < T; ++t) env.sets.push_back(draw_decision_set(model, avail_rng));
    env.beta = model.beta();
  }

  env.losses.reserve(T);
  if (config.loss_model == "paired-bernoulli") {
    PairedBernoulliLosses process(env.dims.d, config.loss_epsilon, loss_rng);
    for (std::size_t t = 0; t < T; ++t) env.losses.push_back(process.step(loss_rng));
  } else {
    RandomWalkLosses walk(env.dims.d, config.loss_sigma, loss_rng);
    for (std::size_t t = 0; t < T; ++t) env.losses.push_back(step_losses(walk, loss_rng));
  }
  return env;
}

inline EtaSource default_eta_source(const std::string& learner) {
  if (learner == "FullInfoFPL") return EtaSource::FullInfo;
  if (learner == "SleepingCat") return EtaSource::Restricted;
  return EtaSource::SemiBandit;
}

inline LearningRate resolve_eta(const LearnerSpec& spec, const ProblemDims& dims, double model_beta) {
  if (spec.eta != "auto") {
    double value = 0.0;
    const auto text = trim(spec.eta);
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && end == text.data() + text.size()) return schedule_eta(dims, EtaSource::Manual, value);
  }
  const EtaSource source = spec.eta == "auto" ? default_eta_source(spec.name) : parse_eta_source(spec.eta);
  switch (source) {
    case EtaSource::FullInfo:
      return schedule_eta(dims, source, spec.best_loss);
    case EtaSource::RestrictedBeta:
      return schedule_eta(dims, source, spec.beta ? spec.beta : std::optional<double>(model_beta));
    default:
      return schedule_eta(dims, source);
  }
}

inline ResamplingBudget resolve_budget(const LearnerSpec& spec, const ProblemDims& dims) {
  if (spec.M == "auto") return schedule_M(dims);
  const long M = parse_long(spec.M, "M");
  if (M < 1) throw std::invalid_argument("M must be at least 1");
  return {M, static_cast<double>(M)};
}

inline BsfplConfig resolve_bsfpl(const ExperimentConfig& config) {
  BsfplConfig b = BsfplConfig::defaults(config.horizon);
  if (config.baseline_t0 != "auto") b.t0 = parse_long(config.baseline_t0, "baseline.t0");
  if (config.baseline_gamma != "auto") b.gamma = parse_double(config.baseline_gamma, "baseline.gamma");
  if (config.baseline_epsilon_floor != "auto") {
    b.epsilon_floor = parse_double(config.baseline_epsilon_floor, "baseline.epsilon_floor");
  }
  b.validate(config.horizon);
  return b;
}

inline std::unique_ptr<Learner> make_learner(const LearnerSpec& spec, const ExperimentConfig& config,
                                             const EnvironmentRealization& env, const SeedMap& seeds) {
  const auto& dims = env.dims;
  const std::uint64_t perturbation_seed = seeds.at(perturbation_stream(spec.name));
  const UniformMode mode =
      config.baseline_uniform_mode == "exact-paths" ? UniformMode::ExactPaths : UniformMode::RandomWalk;
  if (spec.name == "Uniform") return std::make_unique<UniformLearner>(perturbation_seed, mode);
  const LearningRate eta = resolve_eta(spec, dims, env.beta);
  if (spec.name == "FullInfoFPL") return std::make_unique<FullInfoFpl>(dims.d, eta, perturbation_seed);
  if (spec.name == "SleepingCat") return std::make_unique<SleepingCat>(dims.d, eta, perturbation_seed);
  if (spec.name == "SleepingCatBandit") {
    return std::make_unique<SleepingCatBandit>(dims.d, eta, resolve_budget(spec, dims), perturbation_seed,
                                               seeds.at(resampling_stream(spec.name)));
  }
  if (spec.name == "BSFPL" || spec.name == "CombBSFPL") {
    return std::make_unique<Bsfpl>(dims.d, resolve_bsfpl(config), eta, perturbation_seed, spec.name == "CombBSFPL",
                                   mode);
  }
  throw std::invalid_argument("unknown learner: " + spec.name);
}

struct LearnerResult {
  std::string name;
  RegretTrace trace;
  std::string trace_sha256;  ///< over the full-resolution trace rows
};

struct RunRecord {
  ConfigMap config;
  std::string experiment;
  double sweep_value = 0.0;
  int replicate = 0;
  SeedMap seeds;
  std::vector<LearnerResult> learners;
  double wall_clock_seconds = 0.0;
  std::string version{kVersion};
};

/// Runs one (sweep value, replicate) point. `seeds` overrides the derived seeds when given.
inline RunRecord run_point(const ExperimentConfig& config, double sweep_value, int replicate,
                           const SeedMap* seeds = nullptr) {
  const auto started = std::chrono::steady_clock::now();
  RunRecord record;
  record.config = config.to_map();
  record.experiment = std::string(to_string(config.experiment));
  record.sweep_value = sweep_value;
  record.replicate = replicate;
  record.seeds = seeds ? *seeds : derive_point_seeds(config, sweep_value, replicate);

  const EnvironmentRealization env = generate_environment(config, sweep_value, record.seeds);
  const OracleIndex oracles = index_oracles(env.sets);
  std::optional<PolicyTable> table;
  for (const auto& spec : config.learners) {
    auto learner = make_learner(spec, config, env, record.seeds);
    const auto logs = play(*learner, env.sets, env.losses);
    if (!table) table = best_fixed_policy(logs, env.losses, oracles);
    LearnerResult result;
    result.name = spec.name;
    result.trace = regret_trace(logs, *table);
    std::string rows;
    append_trace_rows(rows, record.experiment, sweep_value, replicate, spec.name, result.trace);
    result.trace_sha256 = sha256_hex(rows);
    record.learners.push_back(std::move(result));
  }
  record.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

/// A run point that aborted, with the point's coordinates.
struct RunFailure : std::runtime_error {
  RunFailure(std::string experiment_, double sweep_value_, int replicate_, std::string reason_)
      : std::runtime_error("run aborted at " + experiment_ + " sweep_value=" + format_double(sweep_value_) +
                           " replicate=" + std::to_string(replicate_) + ": " + reason_),
        experiment(std::move(experiment_)),
        sweep_value(sweep_value_),
        replicate(replicate_),
        reason(std::move(reason_)) {}
  std::string experiment;
  double sweep_value;
  int replicate;
  std::string reason;
};

/// Runs every sweep point and replicate, `jobs` at a time. Records come back ordered by sweep
/// point, then replicate.
inline std::vector<RunRecord> run_experiment(const ExperimentConfig& config, int jobs = 1) {
  config.validate();
  const auto points = config.sweep_points();
  const std::size_t total = points.size() * static_cast<std::size_t>(config.replicates);
  std::vector<RunRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total) return;
      const std::size_t point = task / static_cast<std::size_t>(config.replicates);
      const int replicate = static_cast<int>(task % static_cast<std::size_t>(config.replicates));
      try {
        records[task] = run_point(config, points[point], replicate);
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::make_exception_ptr(
              RunFailure(std::string(to_string(config.experiment)), points[point], replicate, e.what()));
        }
        next.store(total);
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

/// Summary rows grouped by sweep value, then learner in configuration order.
inline std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> finals;
  for (const auto& record : records) {
    for (const auto& learner : record.learners) {
      auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow& r) {
        return r.experiment == record.experiment && r.sweep_value == record.sweep_value && r.learner == learner.name;
      });
      if (it == rows.end()) {
        rows.push_back({record.experiment, record.sweep_value, learner.name, 0.0, 0.0, 0});
        finals.emplace_back();
        it = rows.end() - 1;
      }
      finals[static_cast<std::size_t>(it - rows.begin())].push_back(learner.trace.final_regret());
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto [mean, se] = mean_and_std_error(finals[i]);
    rows[i].mean_final_regret = mean;
    rows[i].std_error = se;
    rows[i].n = static_cast<long>(finals[i].size());
  }
  return rows;
}

}  // namespace sleepcat::harness

#endif
