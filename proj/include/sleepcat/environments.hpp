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

#ifndef SLEEPCAT_ENVIRONMENTS_HPP
#define SLEEPCAT_ENVIRONMENTS_HPP

#include <sleepcat/core.hpp>
#include <sleepcat/decision_set.hpp>
#include <sleepcat/grid.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

/**
 * \file
 * \brief Availability distributions and oblivious loss sequences.
 */

namespace sleepcat {

/// Distribution of the decision set over experts (singleton actions) or explicit action lists.
class AvailabilityModel {
 public:
  enum class Kind { IndependentBernoulli, Paired, Custom };

  /// Arm i is awake independently with probability probs[i].
  static AvailabilityModel independent(std::vector<double> probs) {
    if (probs.empty()) throw std::invalid_argument("availability model needs at least one component");
    for (double p : probs) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("availability probability outside [0, 1]");
    }
    AvailabilityModel model;
    model.kind_ = Kind::IndependentBernoulli;
    model.d_ = static_cast<int>(probs.size());
    model.probs_ = std::move(probs);
    return model;
  }

  static AvailabilityModel independent(int d, double p) {
    return independent(std::vector<double>(static_cast<std::size_t>(d), p));
  }

  /// Exactly one pair {2j, 2j+1} is awake, each pair with probability 2/d.
  static AvailabilityModel paired(int d) {
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("paired availability needs an even number of experts");
    AvailabilityModel model;
    model.kind_ = Kind::Paired;
    model.d_ = d;
    return model;
  }

  /// Explicit list of (action list, probability) pairs; probabilities must sum to one.
  static AvailabilityModel custom(int d, std::vector<std::pair<std::vector<Action>, double>> sets) {
    double total = 0.0;
    for (const auto& [actions, p] : sets) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("custom set probability outside [0, 1]");
      total += p;
    }
    if (sets.empty() || std::abs(total - 1.0) > 1e-9) {
      throw std::invalid_argument("custom set probabilities must sum to one");
    }
    AvailabilityModel model;
    model.kind_ = Kind::Custom;
    model.d_ = d;
    for (auto& [actions, p] : sets) {
      model.custom_sets_.push_back(DecisionSet::from_actions(d, std::move(actions)));
      model.probs_.push_back(p);
    }
    return model;
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int dims() const { return d_; }

  /// P(i in D_t) for every component.
  [[nodiscard]] std::vector<double> availability() const {
    switch (kind_) {
      case Kind::IndependentBernoulli:
        return probs_;
      case Kind::Paired:
        return std::vector<double>(static_cast<std::size_t>(d_), 2.0 / d_);
      case Kind::Custom: {
        std::vector<double> a(static_cast<std::size_t>(d_), 0.0);
        for (std::size_t s = 0; s < custom_sets_.size(); ++s) {
          for (int i : custom_sets_[s].available_components()) a[static_cast<std::size_t>(i)] += probs_[s];
        }
        return a;
      }
    }
    return {};
  }

  /// min_i P(i in D_t).
  [[nodiscard]] double beta() const {
    const auto a = availability();
    return *std::min_element(a.begin(), a.end());
  }

  template <std::uniform_random_bit_generator Rng>
  DecisionSet draw(Rng& rng) const {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    switch (kind_) {
      case Kind::IndependentBernoulli: {
        std::vector<int> awake;
        for (int i = 0; i < d_; ++i) {
          if (coin(rng) < probs_[static_cast<std::size_t>(i)]) awake.push_back(i);
        }
        return DecisionSet::singletons(d_, awake);
      }
      case Kind::Paired: {
        std::uniform_int_distribution<int> pick(0, d_ / 2 - 1);
        const int j = pick(rng);
        const int pair[] = {2 * j, 2 * j + 1};
        return DecisionSet::singletons(d_, pair);
      }
      case Kind::Custom: {
        const double u = coin(rng);
        double acc = 0.0;
        for (std::size_t s = 0; s < custom_sets_.size(); ++s) {
          acc += probs_[s];
          if (u < acc) return custom_sets_[s];
        }
        return custom_sets_.back();
      }
    }
    throw std::logic_error("unknown availability kind");
  }

 private:
  Kind kind_ = Kind::IndependentBernoulli;
  int d_ = 0;
  std::vector<double> probs_;
  std::vector<DecisionSet> custom_sets_;
};

template <std::uniform_random_bit_generator Rng>
DecisionSet draw_decision_set(const AvailabilityModel& model, Rng& rng) {
  return model.draw(rng);
}

/// Keeps each edge with the world's availability probability, then prunes to the path support.
/// The result is empty when the sink is cut off.
template <std::uniform_random_bit_generator Rng>
DecisionSet draw_grid_set(const std::shared_ptr<const GridWorld>& world, Rng& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  EdgeMask kept(static_cast<std::size_t>(world->num_edges()));
  for (auto& k : kept) k = coin(rng) < world->edge_avail_prob() ? 1 : 0;
  return DecisionSet::grid(world, kept);
}

/// Truncated Gaussian random walk started from uniform draws.
class RandomWalkLosses {
 public:
  template <std::uniform_random_bit_generator Rng>
  RandomWalkLosses(int d, double sigma, Rng& rng) : sigma_(sigma), noise_(0.0, sigma > 0.0 ? sigma : 1.0) {
    if (d < 1) throw std::invalid_argument("random walk needs at least one component");
    if (!(sigma >= 0.0)) throw std::invalid_argument("random walk sigma must be nonnegative");
    std::uniform_real_distribution<double> init(0.0, 1.0);
    current_.resize(static_cast<std::size_t>(d));
    for (auto& c : current_) c = init(rng);
  }

  [[nodiscard]] double sigma() const { return sigma_; }
  [[nodiscard]] const LossVector& current() const { return current_; }

  template <std::uniform_random_bit_generator Rng>
  LossVector step(Rng& rng) {
    if (sigma_ > 0.0) {
      for (auto& c : current_) c = std::clamp(c + noise_(rng), 0.0, 1.0);
    }
    return current_;
  }

 private:
  double sigma_;
  std::normal_distribution<double> noise_;
  LossVector current_;
};

template <std::uniform_random_bit_generator Rng>
LossVector step_losses(RandomWalkLosses& walk, Rng& rng) {
  return walk.step(rng);
}

/// Independent Bernoulli losses. Within each pair {2j, 2j+1} one member, chosen at random, has
/// mean 1/2 - epsilon and the other 1/2 + epsilon.
class PairedBernoulliLosses {
 public:
  template <std::uniform_random_bit_generator Rng>
  PairedBernoulliLosses(int d, double epsilon, Rng& rng) {
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("paired losses need an even number of experts");
    if (!(epsilon >= 0.0 && epsilon <= 0.5)) throw std::invalid_argument("epsilon outside [0, 1/2]");
    means_.resize(static_cast<std::size_t>(d));
    std::bernoulli_distribution flip(0.5);
    for (int j = 0; j < d / 2; ++j) {
      const bool first_good = flip(rng);
      means_[static_cast<std::size_t>(2 * j)] = first_good ? 0.5 - epsilon : 0.5 + epsilon;
      means_[static_cast<std::size_t>(2 * j + 1)] = first_good ? 0.5 + epsilon : 0.5 - epsilon;
    }
  }

  [[nodiscard]] const std::vector<double>& means() const { return means_; }

  template <std::uniform_random_bit_generator Rng>
  LossVector step(Rng& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    LossVector loss(means_.size());
    for (std::size_t i = 0; i < means_.size(); ++i) loss[i] = coin(rng) < means_[i] ? 1.0 : 0.0;
    return loss;
  }

 private:
  std::vector<double> means_;
};

}  // namespace sleepcat

#endif
