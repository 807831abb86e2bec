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

#ifndef SLEEPCAT_EVALUATION_HPP
#define SLEEPCAT_EVALUATION_HPP

#include <sleepcat/core.hpp>
#include <sleepcat/decision_set.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

/**
 * \file
 * \brief Exact hindsight comparator over policies that map decision sets to actions.
 *
 * The comparator's total loss is a sum over distinct realized decision sets of the loss of one
 * action per set, so the best policy picks, for every set independently, the action minimizing
 * the loss summed over the rounds that set occurred.
 */

namespace sleepcat {

/// Decision set by digest; the argmin capability of every set occurring in a run.
using OracleIndex = std::unordered_map<std::string, const DecisionSet*>;

inline OracleIndex index_oracles(std::span<const DecisionSet> sets) {
  OracleIndex index;
  for (const auto& set : sets) index.emplace(set.digest(), &set);
  return index;
}

struct PolicyGroup {
  std::string digest;
  std::vector<std::size_t> rounds;  ///< positions in the log
  Action best;
  double total_loss = 0.0;
};

struct PolicyTable {
  std::vector<PolicyGroup> groups;          ///< in order of first occurrence
  std::vector<double> comparator_losses;    ///< per log position; 0 for skipped rounds
  double total_loss = 0.0;
};

/// Best fixed policy in hindsight; `losses[k]` is the loss vector of `logs[k]`.
inline PolicyTable best_fixed_policy(std::span<const RoundLog> logs, std::span<const LossVector> losses,
                                     const OracleIndex& oracles) {
  if (logs.size() != losses.size()) throw std::invalid_argument("best_fixed_policy: logs and losses differ in length");
  PolicyTable table;
  table.comparator_losses.assign(logs.size(), 0.0);
  std::unordered_map<std::string, std::size_t> group_of;
  std::vector<std::vector<double>> sums;
  for (std::size_t k = 0; k < logs.size(); ++k) {
    if (logs[k].skipped) continue;
    const auto& digest = logs[k].decision_set_digest;
    auto [it, inserted] = group_of.try_emplace(digest, table.groups.size());
    if (inserted) {
      if (!oracles.contains(digest)) throw std::runtime_error("best_fixed_policy: no oracle for decision set " + digest);
      table.groups.push_back({digest, {}, {}, 0.0});
      sums.emplace_back(losses[k].size(), 0.0);
    }
    auto& sum = sums[it->second];
    if (sum.size() != losses[k].size()) throw std::invalid_argument("best_fixed_policy: loss dimension changed");
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += losses[k][i];
    table.groups[it->second].rounds.push_back(k);
  }
  for (std::size_t g = 0; g < table.groups.size(); ++g) {
    auto& group = table.groups[g];
    group.best = oracles.at(group.digest)->argmin(sums[g]);
    for (std::size_t k : group.rounds) {
      const double loss = incurred_loss(group.best, losses[k]);
      table.comparator_losses[k] = loss;
      group.total_loss += loss;
    }
  }
  for (double loss : table.comparator_losses) table.total_loss += loss;
  return table;
}

struct RegretTrace {
  std::vector<double> cum_learner_loss;
  std::vector<double> cum_comparator_loss;
  std::vector<double> cum_regret;
  std::vector<int> available_count;  ///< |D_t|, an upper bound on the Q_t diagnostic
  std::vector<std::uint8_t> skipped;
  long skip_count = 0;

  [[nodiscard]] double final_regret() const { return cum_regret.empty() ? 0.0 : cum_regret.back(); }
};

inline RegretTrace regret_trace(std::span<const RoundLog> logs, const PolicyTable& table) {
  if (logs.size() != table.comparator_losses.size()) {
    throw std::invalid_argument("regret_trace: policy table does not match the log");
  }
  RegretTrace trace;
  const std::size_t n = logs.size();
  trace.cum_learner_loss.reserve(n);
  trace.cum_comparator_loss.reserve(n);
  trace.cum_regret.reserve(n);
  double learner = 0.0;
  double comparator = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (logs[k].skipped) {
      ++trace.skip_count;
    } else {
      learner += logs[k].incurred_loss;
      comparator += table.comparator_losses[k];
    }
    trace.cum_learner_loss.push_back(learner);
    trace.cum_comparator_loss.push_back(comparator);
    trace.cum_regret.push_back(learner - comparator);
    trace.available_count.push_back(logs[k].available_count);
    trace.skipped.push_back(logs[k].skipped ? 1 : 0);
  }
  return trace;
}

}  // namespace sleepcat

#endif
