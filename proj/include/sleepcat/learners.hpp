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

#ifndef SLEEPCAT_LEARNERS_HPP
#define SLEEPCAT_LEARNERS_HPP

#include <sleepcat/core.hpp>
#include <sleepcat/decision_set.hpp>
#include <sleepcat/estimators.hpp>
#include <sleepcat/fpl.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sleepcat {

using Rng = std::mt19937_64;

/// The feedback a learner receives for `chosen` under `scheme`, sorted by component.
inline Observation reveal(FeedbackScheme scheme, const DecisionSet& set, const Action& chosen,
                          std::span<const double> loss) {
  Observation observed;
  switch (scheme) {
    case FeedbackScheme::FullInformation:
      observed.reserve(loss.size());
      for (std::size_t i = 0; i < loss.size(); ++i) observed.emplace_back(static_cast<int>(i), loss[i]);
      break;
    case FeedbackScheme::Restricted:
      for (int i : set.available_components()) observed.emplace_back(i, loss[static_cast<std::size_t>(i)]);
      break;
    case FeedbackScheme::SemiBandit:
      for (int i : chosen.components()) observed.emplace_back(i, loss[static_cast<std::size_t>(i)]);
      break;
  }
  return observed;
}

/// One online learner. Each round the driver calls select() then observe() with the same set.
/// Rounds without a feasible action are not shown to the learner at all.
class Learner {
 public:
  virtual ~Learner() = default;
  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual FeedbackScheme feedback() const = 0;
  virtual Action select(const DecisionSet& set) = 0;
  virtual void observe(const DecisionSet& set, const Action& chosen, const Observation& observed) = 0;
};

/// Shared bookkeeping for the perturbed-leader learners: the select/observe handshake and the
/// perturbation stream.
class FplLearnerBase : public Learner {
 public:
  FplLearnerBase(int d, LearningRate eta, std::uint64_t perturbation_seed)
      : d_(d), eta_(eta), perturbation_rng_(perturbation_seed), state_(d) {}

  [[nodiscard]] const LearningRate& eta() const { return eta_; }
  [[nodiscard]] const CatState& state() const { return state_; }

 protected:
  Action select_fpl(const DecisionSet& set) {
    if (set.dims() != d_) throw std::invalid_argument("decision set dimension does not match the learner");
    const Perturbation z = sample_perturbation(d_, perturbation_rng_);
    Action chosen = fpl_select(set, state_.cum_est(), eta_, z);
    remember(set, chosen);
    return chosen;
  }

  void remember(const DecisionSet& set, const Action& chosen) {
    selected_digest_ = set.digest();
    selected_ = chosen;
  }

  /// Checks that observe() pairs with the preceding select(); returns the round number.
  long begin_observe(const DecisionSet& set, const Action& chosen) {
    if (!selected_digest_ || *selected_digest_ != set.digest() || chosen != selected_) {
      throw ProtocolViolation(name() + ": observe() does not match the preceding select()");
    }
    selected_digest_.reset();
    return ++round_;
  }

  int d_;
  LearningRate eta_;
  Rng perturbation_rng_;
  CatState state_;
  long round_ = 0;

 private:
  std::optional<std::string> selected_digest_;
  Action selected_;
};

/// FPL on the full loss vectors.
class FullInfoFpl final : public FplLearnerBase {
 public:
  using FplLearnerBase::FplLearnerBase;

  [[nodiscard]] std::string name() const override { return "FullInfoFPL"; }
  [[nodiscard]] FeedbackScheme feedback() const override { return FeedbackScheme::FullInformation; }

  Action select(const DecisionSet& set) override { return select_fpl(set); }

  void observe(const DecisionSet& set, const Action& chosen, const Observation& observed) override {
    const long t = begin_observe(set, chosen);
    if (static_cast<int>(observed.size()) != d_) throw ProtocolViolation("full information needs all d losses");
    std::vector<double> loss(static_cast<std::size_t>(d_));
    for (const auto& [i, l] : observed) {
      if (i < 0 || i >= d_) throw ProtocolViolation("observation key outside [0, d)");
      loss[static_cast<std::size_t>(i)] = l;
    }
    state_.observe_full(t, loss);
  }
};

/// FPL with counting-asleep-times estimates under restricted feedback.
class SleepingCat final : public FplLearnerBase {
 public:
  using FplLearnerBase::FplLearnerBase;

  [[nodiscard]] std::string name() const override { return "SleepingCat"; }
  [[nodiscard]] FeedbackScheme feedback() const override { return FeedbackScheme::Restricted; }

  Action select(const DecisionSet& set) override { return select_fpl(set); }

  void observe(const DecisionSet& set, const Action& chosen, const Observation& observed) override {
    const long t = begin_observe(set, chosen);
    state_.observe_restricted(t, set.available_components(), observed);
  }
};

/// FPL with counting-asleep-times and geometric resampling under semi-bandit feedback.
class SleepingCatBandit final : public FplLearnerBase {
 public:
  SleepingCatBandit(int d, LearningRate eta, ResamplingBudget budget, std::uint64_t perturbation_seed,
                    std::uint64_t resampling_seed)
      : FplLearnerBase(d, eta, perturbation_seed), budget_(budget), resampling_rng_(resampling_seed) {
    if (budget.M < 1) throw std::invalid_argument("resampling budget must be at least 1");
  }

  [[nodiscard]] std::string name() const override { return "SleepingCatBandit"; }
  [[nodiscard]] FeedbackScheme feedback() const override { return FeedbackScheme::SemiBandit; }
  [[nodiscard]] const ResamplingBudget& budget() const { return budget_; }
  [[nodiscard]] const ResampleCounts& last_counts() const { return last_counts_; }

  Action select(const DecisionSet& set) override { return select_fpl(set); }

  void observe(const DecisionSet& set, const Action& chosen, const Observation& observed) override {
    const long t = begin_observe(set, chosen);
    // The estimates have not moved since selection, so the redraws target the same distribution.
    last_counts_ = geometric_resample(set, state_.cum_est(), eta_, chosen, budget_, resampling_rng_);
    state_.observe_semibandit(t, set.available_components(), chosen, observed, last_counts_);
  }

 private:
  ResamplingBudget budget_;
  Rng resampling_rng_;
  ResampleCounts last_counts_;
};

/// Plays `learner` through the rounds in order. Rounds whose set has no feasible action are logged
/// as skipped and not shown to the learner.
inline std::vector<RoundLog> play(Learner& learner, std::span<const DecisionSet> sets,
                                  std::span<const LossVector> losses) {
  if (sets.size() != losses.size()) throw std::invalid_argument("play: one loss vector per round is required");
  std::vector<RoundLog> logs;
  logs.reserve(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const DecisionSet& set = sets[k];
    RoundLog log;
    log.round = static_cast<long>(k) + 1;
    log.decision_set_digest = set.digest();
    log.available_count = static_cast<int>(set.available_components().size());
    if (set.empty()) {
      log.skipped = true;
      logs.push_back(std::move(log));
      continue;
    }
    Action chosen = learner.select(set);
    if (!set.contains(chosen)) throw ProtocolViolation(learner.name() + " chose an infeasible action");
    Observation observed = reveal(learner.feedback(), set, chosen, losses[k]);
    learner.observe(set, chosen, observed);
    log.incurred_loss = incurred_loss(chosen, losses[k]);
    log.observed = std::move(observed);
    log.chosen = std::move(chosen);
    logs.push_back(std::move(log));
  }
  return logs;
}

}  // namespace sleepcat

#endif
