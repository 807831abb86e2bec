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

#ifndef SLEEPCAT_ESTIMATORS_HPP
#define SLEEPCAT_ESTIMATORS_HPP

#include <sleepcat/core.hpp>
#include <sleepcat/decision_set.hpp>
#include <sleepcat/fpl.hpp>

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

/**
 * \file
 * \brief Cumulative loss estimation by counting asleep times.
 *
 * The per-round estimate of component i observed at round t is its observed value times the number
 * of rounds N until i is next available. That count is only known once i wakes up, so the state
 * keeps one pending entry per component: the last observed value, the round it came from, and how
 * many rounds it has been carried for. Carrying the last observation forward while a component
 * sleeps is the same as charging value * N once it wakes, and at the start of every round the
 * cumulative estimate of each available component equals the fully resolved sum.
 *
 * Rounds handed to the state must be consecutive (1, 2, 3, ...). A driver that skips rounds with
 * no feasible action numbers only the rounds it does feed in.
 */

namespace sleepcat {

/// Sorted component -> K map produced by geometric resampling.
using ResampleCounts = std::vector<std::pair<int, long>>;

class CatState {
 public:
  struct Pending {
    double value = 0.0;  ///< observed loss (times K for semi-bandit feedback)
    long since = 0;      ///< round of the generating observation
    long accrued = 0;    ///< rounds the value has been carried, including `since`
  };

  explicit CatState(int d)
      : finalized_(static_cast<std::size_t>(d), 0.0),
        cum_est_(static_cast<std::size_t>(d), 0.0),
        pending_(static_cast<std::size_t>(d)),
        in_round_(static_cast<std::size_t>(d), 0) {
    if (d < 1) throw std::invalid_argument("CatState: d must be positive");
  }

  [[nodiscard]] int dims() const { return static_cast<int>(cum_est_.size()); }
  [[nodiscard]] long last_round() const { return last_round_; }

  /// Current cumulative estimate: resolved mass plus the instalments of each pending entry.
  [[nodiscard]] std::span<const double> cum_est() const { return cum_est_; }
  [[nodiscard]] double finalized(int i) const { return finalized_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const std::optional<Pending>& pending(int i) const { return pending_[static_cast<std::size_t>(i)]; }

  /// Restricted feedback: `observed` must cover exactly the available components.
  void observe_restricted(long t, std::span<const int> available, const Observation& observed) {
    begin_round(t);
    if (observed.size() != available.size()) {
      throw ProtocolViolation("restricted feedback must cover exactly the available components");
    }
    for (std::size_t k = 0; k < available.size(); ++k) {
      check_entry(observed[k], available[k]);
    }
    mark(available);
    for (const auto& [i, loss] : observed) {
      finalize(i, t);
      pending_[static_cast<std::size_t>(i)] = Pending{loss, t, 1};
    }
    carry_sleeping();
    unmark(available);
    last_round_ = t;
  }

  /// Semi-bandit feedback: `observed` and `k_counts` must cover exactly the played components.
  /**
   * Pending entries resolve at the first round their component is available, played or not; a new
   * entry (observed loss times K) is opened only for played components.
   */
  void observe_semibandit(long t, std::span<const int> available, const Action& chosen, const Observation& observed,
                          const ResampleCounts& k_counts) {
    begin_round(t);
    const auto played = chosen.components();
    if (observed.size() != played.size() || k_counts.size() != played.size()) {
      throw ProtocolViolation("semi-bandit feedback must cover exactly the played components");
    }
    for (std::size_t k = 0; k < played.size(); ++k) {
      check_entry(observed[k], played[k]);
      if (k_counts[k].first != played[k] || k_counts[k].second < 1) {
        throw ProtocolViolation("resample count missing or invalid for a played component");
      }
      if (!std::binary_search(available.begin(), available.end(), played[k])) {
        throw ProtocolViolation("played component is not available");
      }
    }
    mark(available);
    for (int i : available) finalize(i, t);
    for (std::size_t k = 0; k < played.size(); ++k) {
      const double value = observed[k].second * static_cast<double>(k_counts[k].second);
      pending_[static_cast<std::size_t>(played[k])] = Pending{value, t, 1};
    }
    carry_sleeping();
    unmark(available);
    last_round_ = t;
  }

  /// Full information: the estimate is the loss itself.
  void observe_full(long t, std::span<const double> loss) {
    begin_round(t);
    if (static_cast<int>(loss.size()) != dims()) throw std::invalid_argument("loss vector dimension mismatch");
    for (std::size_t i = 0; i < loss.size(); ++i) {
      finalized_[i] += loss[i];
      cum_est_[i] = finalized_[i];
    }
    last_round_ = t;
  }

  /// Resolves every open entry with the instalments accrued so far.
  void finalize_open() {
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      if (!pending_[i]) continue;
      finalized_[i] += pending_[i]->value * static_cast<double>(pending_[i]->accrued);
      pending_[i].reset();
      cum_est_[i] = finalized_[i];
    }
  }

 private:
  void begin_round(long t) {
    if (t != last_round_ + 1) throw ProtocolViolation("estimator rounds must be consecutive");
  }

  void check_entry(const std::pair<int, double>& entry, int expected) const {
    if (entry.first != expected) throw ProtocolViolation("observation keys do not match the expected components");
    if (!(entry.second >= 0.0 && entry.second <= 1.0)) throw std::invalid_argument("observed loss outside [0, 1]");
  }

  void finalize(int i, long t) {
    auto& p = pending_[static_cast<std::size_t>(i)];
    if (p) {
      const long asleep = t - p->since;
      if (asleep != p->accrued) throw ProtocolViolation("pending entry missed a round");
      finalized_[static_cast<std::size_t>(i)] += p->value * static_cast<double>(asleep);
      p.reset();
    }
    cum_est_[static_cast<std::size_t>(i)] = finalized_[static_cast<std::size_t>(i)];
  }

  void carry_sleeping() {
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      auto& p = pending_[i];
      if (!p) continue;
      if (!in_round_[i]) ++p->accrued;
      cum_est_[i] = finalized_[i] + p->value * static_cast<double>(p->accrued);
    }
  }

  void mark(std::span<const int> components) {
    for (int i : components) {
      if (i < 0 || i >= dims()) {
        unmark(components);
        throw ProtocolViolation("component outside [0, d)");
      }
      in_round_[static_cast<std::size_t>(i)] = 1;
    }
  }
  void unmark(std::span<const int> components) {
    for (int i : components) {
      if (i >= 0 && i < dims()) in_round_[static_cast<std::size_t>(i)] = 0;
    }
  }

  std::vector<double> finalized_;
  std::vector<double> cum_est_;
  std::vector<std::optional<Pending>> pending_;
  std::vector<std::uint8_t> in_round_;
  long last_round_ = 0;
};

/// Geometric resampling of the inclusion probability of each played component.
/**
 * Redraws perturbations against the same decision set and estimates until every played component
 * reappears, capped at `budget.M` redraws. K_i is the first redraw that includes i, or M.
 * `chosen` must be feasible in `set`; anything else means the set changed after selection.
 */
template <std::uniform_random_bit_generator Rng>
ResampleCounts geometric_resample(const DecisionSet& set, std::span<const double> cum_est, const LearningRate& eta,
                                  const Action& chosen, const ResamplingBudget& budget, Rng& rng) {
  if (budget.M < 1) throw std::invalid_argument("geometric_resample: M must be at least 1");
  if (!set.contains(chosen)) throw ProtocolViolation("geometric_resample: chosen action is not in the decision set");
  const auto played = chosen.components();
  ResampleCounts counts;
  counts.reserve(played.size());
  for (int i : played) counts.emplace_back(i, budget.M);

  std::size_t unmatched = played.size();
  std::vector<double> scores(cum_est.size());
  for (long k = 1; k < budget.M && unmatched > 0; ++k) {
    for (std::size_t i = 0; i < cum_est.size(); ++i) {
      scores[i] = eta.eta * cum_est[i] + std::log(uniform_open_closed(rng));
    }
    const Action redraw = set.argmin(scores);
    for (auto& [i, count] : counts) {
      if (count == budget.M && redraw.contains(i)) {
        count = k;
        --unmatched;
      }
    }
  }
  return counts;
}

}  // namespace sleepcat

#endif
