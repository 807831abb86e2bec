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

#ifndef SLEEPCAT_BASELINES_HPP
#define SLEEPCAT_BASELINES_HPP

#include <sleepcat/core.hpp>
#include <sleepcat/decision_set.hpp>
#include <sleepcat/fpl.hpp>
#include <sleepcat/learners.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

/**
 * \file
 * \brief Comparator policies: explicit-exploration FPL (experts and combinatorial) and the
 * uniformly random policy.
 */

namespace sleepcat {

enum class UniformMode {
  RandomWalk,  ///< grid: uniform among available outgoing edges at every node
  ExactPaths,  ///< grid: uniform over all available source-sink paths
};

/// Uniformly random feasible action; nullopt when the set has none.
template <std::uniform_random_bit_generator G>
std::optional<Action> uniform_policy(const DecisionSet& set, G& rng, UniformMode mode = UniformMode::RandomWalk) {
  if (set.empty()) return std::nullopt;
  if (set.kind() == DecisionSet::Kind::Explicit) {
    std::uniform_int_distribution<std::size_t> pick(0, set.actions().size() - 1);
    return set.actions()[pick(rng)];
  }
  const GridWorld& world = *set.world();
  const EdgeMask& available = set.available_mask();
  if (mode == UniformMode::ExactPaths) {
    const auto count = count_paths_to_sink(world, available);
    std::vector<int> path;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int u = world.source(); u != world.sink();) {
      double r = coin(rng) * count[static_cast<std::size_t>(u)];
      int pick = -1;
      for (int e : world.out_edges(u)) {
        if (!available[static_cast<std::size_t>(e)]) continue;
        const double c = count[static_cast<std::size_t>(world.edge(e).head)];
        if (c == 0.0) continue;
        pick = e;
        if (r < c) break;
        r -= c;
      }
      path.push_back(pick);
      u = world.edge(pick).head;
    }
    return Action(std::move(path));
  }
  constexpr int kMaxRestarts = 64;
  std::vector<int> options;
  for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
    std::vector<int> path;
    int u = world.source();
    while (u != world.sink()) {
      options.clear();
      for (int e : world.out_edges(u)) {
        if (available[static_cast<std::size_t>(e)]) options.push_back(e);
      }
      if (options.empty()) break;  // dead end: restart
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      const int e = options[pick(rng)];
      path.push_back(e);
      u = world.edge(e).head;
    }
    if (u == world.sink()) return Action(std::move(path));
  }
  return std::nullopt;
}

/// Plays uniform_policy every round.
class UniformLearner final : public Learner {
 public:
  UniformLearner(std::uint64_t seed, UniformMode mode = UniformMode::RandomWalk) : rng_(seed), mode_(mode) {}

  [[nodiscard]] std::string name() const override { return "Uniform"; }
  [[nodiscard]] FeedbackScheme feedback() const override { return FeedbackScheme::SemiBandit; }

  Action select(const DecisionSet& set) override {
    auto action = uniform_policy(set, rng_, mode_);
    if (!action) throw EmptyDecisionSet("uniform policy found no feasible action");
    return *action;
  }

  void observe(const DecisionSet&, const Action&, const Observation&) override {}

 private:
  Rng rng_;
  UniformMode mode_;
};

struct BsfplConfig {
  long t0 = 1;                  ///< rounds devoted to estimating availabilities
  double gamma = 1.0;           ///< exploration probability in the main phase
  double epsilon_floor = 1e-3;  ///< lower clamp for the estimated availabilities

  /// T0 = ceil(T^{4/5}), gamma = T^{-1/5}, floor = 1/T.
  static BsfplConfig defaults(long horizon) {
    const double T = static_cast<double>(horizon);
    return {static_cast<long>(std::ceil(std::pow(T, 0.8))), std::pow(T, -0.2), 1.0 / T};
  }

  void validate(long horizon) const {
    if (t0 < 1 || t0 >= horizon) throw std::invalid_argument("BSFPL needs 1 <= t0 < T");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("BSFPL needs 0 < gamma <= 1");
    if (!(epsilon_floor > 0.0)) throw std::invalid_argument("BSFPL needs a positive availability floor");
  }
};

/// FPL with an availability-estimation phase followed by explicit exploration rounds.
/**
 * Rounds 1..t0 play the uniform policy and count how often each component is available (for
 * combinatorial sets: lies on a feasible action). Afterwards each round explores with
 * probability gamma: a component j is drawn uniformly from [d] and, when available, an action
 * through j is played and j's estimate grows by l_j * d / (gamma * a_j). Otherwise, and in all
 * remaining rounds, the FPL action on the current estimates is played.
 */
class Bsfpl final : public Learner {
 public:
  Bsfpl(int d, BsfplConfig config, LearningRate eta, std::uint64_t seed, bool combinatorial = false,
        UniformMode mode = UniformMode::RandomWalk)
      : d_(d),
        config_(config),
        eta_(eta),
        rng_(seed),
        combinatorial_(combinatorial),
        mode_(mode),
        cum_est_(static_cast<std::size_t>(d), 0.0),
        avail_counts_(static_cast<std::size_t>(d), 0),
        avail_est_(static_cast<std::size_t>(d), 0.0) {
    if (!(config.gamma > 0.0 && config.gamma <= 1.0) || config.t0 < 1 || !(config.epsilon_floor > 0.0)) {
      throw std::invalid_argument("invalid BSFPL configuration");
    }
  }

  [[nodiscard]] std::string name() const override { return combinatorial_ ? "CombBSFPL" : "BSFPL"; }
  [[nodiscard]] FeedbackScheme feedback() const override { return FeedbackScheme::SemiBandit; }
  [[nodiscard]] const BsfplConfig& config() const { return config_; }
  [[nodiscard]] std::span<const double> cum_est() const { return cum_est_; }
  [[nodiscard]] std::span<const double> availability_estimates() const { return avail_est_; }
  [[nodiscard]] bool in_initial_phase() const { return round_ < config_.t0; }
  [[nodiscard]] std::optional<int> last_explored() const { return explored_; }

  Action select(const DecisionSet& set) override {
    if (set.dims() != d_) throw std::invalid_argument("decision set dimension does not match the learner");
    explored_.reset();
    if (in_initial_phase()) {
      auto action = uniform_policy(set, rng_, mode_);
      if (!action) throw EmptyDecisionSet(name() + ": no feasible action");
      return *action;
    }
    const Perturbation z = sample_perturbation(d_, rng_);
    std::vector<double> scores;
    perturbed_scores(cum_est_, eta_.eta, z.z, scores);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng_) < config_.gamma) {
      std::uniform_int_distribution<int> pick(0, d_ - 1);
      const int j = pick(rng_);
      if (set.is_available(j)) {
        explored_ = j;
        return set.argmin_through(j, scores);
      }
    }
    return set.argmin(scores);
  }

  void observe(const DecisionSet& set, const Action& chosen, const Observation& observed) override {
    ++round_;
    if (round_ <= config_.t0) {
      for (int i : set.available_components()) ++avail_counts_[static_cast<std::size_t>(i)];
      if (round_ == config_.t0) {
        for (std::size_t i = 0; i < avail_est_.size(); ++i) {
          avail_est_[i] = std::max(static_cast<double>(avail_counts_[i]) / static_cast<double>(config_.t0),
                                   config_.epsilon_floor);
        }
      }
      return;
    }
    if (!explored_) return;
    const int j = *explored_;
    if (!chosen.contains(j)) throw ProtocolViolation(name() + ": explored component missing from the action");
    auto it = std::find_if(observed.begin(), observed.end(), [j](const auto& entry) { return entry.first == j; });
    if (it == observed.end()) throw ProtocolViolation(name() + ": no feedback for the explored component");
    const auto ji = static_cast<std::size_t>(j);
    cum_est_[ji] += it->second * static_cast<double>(d_) / (config_.gamma * avail_est_[ji]);
  }

 private:
  int d_;
  BsfplConfig config_;
  LearningRate eta_;
  Rng rng_;
  bool combinatorial_;
  UniformMode mode_;
  std::vector<double> cum_est_;
  std::vector<long> avail_counts_;
  std::vector<double> avail_est_;
  std::optional<int> explored_;
  long round_ = 0;
};

}  // namespace sleepcat

#endif
