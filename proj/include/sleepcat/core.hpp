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

#ifndef SLEEPCAT_CORE_HPP
#define SLEEPCAT_CORE_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

/**
 * \file
 * \brief Domain types shared by learners, environments and the experiment harness.
 *
 * A round of the protocol: the environment draws a decision set and a loss vector, the learner
 * picks a feasible action, suffers its inner product with the loss vector and receives feedback
 * whose extent depends on the feedback scheme.
 */

namespace sleepcat {

inline constexpr std::string_view kVersion = "0.1.0";

/// Thrown when the learner/environment exchange breaks the round protocol.
class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Thrown when an action is requested from a decision set with no feasible action.
class EmptyDecisionSet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the grid oracle when the sink cannot be reached.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemDims {
  int d = 1;  ///< number of components
  int m = 1;  ///< max components per action
  long T = 1;  ///< horizon

  void validate() const {
    if (d < 1 || m < 1 || m > d || T < 1) {
      throw std::invalid_argument("ProblemDims requires 1 <= m <= d and T >= 1");
    }
  }
};

/// Binary incidence vector stored as the sorted list of its active components.
class Action {
 public:
  Action() = default;

  explicit Action(std::vector<int> components) : components_(std::move(components)) {
    std::sort(components_.begin(), components_.end());
    components_.erase(std::unique(components_.begin(), components_.end()), components_.end());
  }

  Action(std::initializer_list<int> components) : Action(std::vector<int>(components)) {}

  [[nodiscard]] std::span<const int> components() const { return components_; }
  [[nodiscard]] std::size_t size() const { return components_.size(); }
  [[nodiscard]] bool empty() const { return components_.empty(); }

  [[nodiscard]] bool contains(int i) const {
    return std::binary_search(components_.begin(), components_.end(), i);
  }

  /// Throws if a component falls outside [0, d) or the action has more than m components.
  void validate(int d, int m) const {
    if (static_cast<int>(components_.size()) > m) {
      throw std::invalid_argument("action exceeds m components");
    }
    if (!components_.empty() && (components_.front() < 0 || components_.back() >= d)) {
      throw std::invalid_argument("action component out of range");
    }
  }

  friend bool operator==(const Action&, const Action&) = default;
  /// Lexicographic order on the sorted component lists; the canonical tie-break order.
  friend auto operator<=>(const Action& a, const Action& b) { return a.components_ <=> b.components_; }

 private:
  std::vector<int> components_;
};

using LossVector = std::vector<double>;

/// Throws unless every entry lies in [0, 1].
inline void validate_losses(std::span<const double> losses) {
  for (double l : losses) {
    if (!(l >= 0.0 && l <= 1.0)) {
      throw std::invalid_argument("loss entry outside [0, 1]");
    }
  }
}

/// V^T l.
inline double incurred_loss(const Action& action, std::span<const double> loss) {
  double total = 0.0;
  for (int i : action.components()) {
    if (i < 0 || static_cast<std::size_t>(i) >= loss.size()) {
      throw std::invalid_argument("action component outside the loss vector");
    }
    total += loss[static_cast<std::size_t>(i)];
  }
  return total;
}

enum class FeedbackScheme { FullInformation, Restricted, SemiBandit };

inline std::string_view to_string(FeedbackScheme scheme) {
  switch (scheme) {
    case FeedbackScheme::FullInformation:
      return "full-information";
    case FeedbackScheme::Restricted:
      return "restricted";
    case FeedbackScheme::SemiBandit:
      return "semi-bandit";
  }
  return "unknown";
}

/// Sparse component -> loss map, sorted by component.
using Observation = std::vector<std::pair<int, double>>;

struct RoundLog {
  long round = 0;
  std::string decision_set_digest;
  bool skipped = false;  ///< no feasible action; contributes nothing to either side of the regret
  Action chosen;
  double incurred_loss = 0.0;
  Observation observed;
  int available_count = 0;  ///< |D_t|
};

}  // namespace sleepcat

#endif
