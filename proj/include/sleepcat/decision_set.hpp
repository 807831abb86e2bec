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

#ifndef SLEEPCAT_DECISION_SET_HPP
#define SLEEPCAT_DECISION_SET_HPP

#include <sleepcat/core.hpp>
#include <sleepcat/grid.hpp>

#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sleepcat {

/// The realized feasible set S_t of one round together with its available components D_t.
/**
 * Either an explicit action list (experts and small enumerable sets) or a grid handle answering
 * shortest-path queries over the surviving edges. Both forms expose argmin over the feasible
 * actions for a weight vector and the set D_t; neither form is enumerated by the learners.
 *
 * Immutable after construction.
 */
class DecisionSet {
 public:
  enum class Kind { Explicit, Grid };

  DecisionSet() = default;

  /// Explicit action list; duplicates are dropped and the list is sorted lexicographically.
  static DecisionSet from_actions(int d, std::vector<Action> actions) {
    DecisionSet set;
    set.d_ = d;
    set.kind_ = Kind::Explicit;
    std::sort(actions.begin(), actions.end());
    actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
    set.available_.assign(static_cast<std::size_t>(d), 0);
    for (const auto& a : actions) {
      a.validate(d, d);
      for (int i : a.components()) set.available_[static_cast<std::size_t>(i)] = 1;
    }
    set.actions_ = std::move(actions);
    set.finish("X");
    return set;
  }

  /// Experts case: one singleton action per available arm.
  static DecisionSet singletons(int d, std::span<const int> arms) {
    std::vector<Action> actions;
    actions.reserve(arms.size());
    for (int i : arms) actions.push_back(Action{i});
    DecisionSet set = from_actions(d, std::move(actions));
    set.singletons_ = true;
    set.finish("E");
    return set;
  }

  /// Grid case: `kept` marks the edges that survived the availability draw. Edges not on any
  /// source-sink path of kept edges are pruned.
  static DecisionSet grid(std::shared_ptr<const GridWorld> world, const EdgeMask& kept) {
    if (!world || static_cast<int>(kept.size()) != world->num_edges()) {
      throw std::invalid_argument("grid decision set: mask does not match the grid");
    }
    DecisionSet set;
    set.d_ = world->num_edges();
    set.kind_ = Kind::Grid;
    set.available_ = world->path_support(kept);
    set.world_ = std::move(world);
    set.finish("G" + std::to_string(set.world_->rows()) + "x" + std::to_string(set.world_->cols()));
    return set;
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] int dims() const { return d_; }
  [[nodiscard]] bool is_singletons() const { return singletons_; }
  [[nodiscard]] const GridWorld* world() const { return world_.get(); }
  [[nodiscard]] std::shared_ptr<const GridWorld> world_handle() const { return world_; }
  [[nodiscard]] std::span<const Action> actions() const { return actions_; }

  /// True when no feasible action exists (empty list, or sink unreachable).
  [[nodiscard]] bool empty() const {
    return kind_ == Kind::Explicit ? actions_.empty() : components_.empty();
  }

  /// D_t, sorted ascending.
  [[nodiscard]] std::span<const int> available_components() const { return components_; }
  [[nodiscard]] const EdgeMask& available_mask() const { return available_; }
  [[nodiscard]] bool is_available(int i) const {
    return i >= 0 && i < d_ && available_[static_cast<std::size_t>(i)] != 0;
  }

  /// Canonical key: structural tag plus the hex mask of D_t (and, for general explicit lists,
  /// every action).
  [[nodiscard]] const std::string& digest() const { return digest_; }

  [[nodiscard]] bool contains(const Action& action) const {
    if (kind_ == Kind::Explicit) {
      return std::binary_search(actions_.begin(), actions_.end(), action);
    }
    // A path: every edge available, and the edges chain from source to sink.
    const auto& w = *world_;
    if (static_cast<int>(action.size()) != w.path_length()) return false;
    int u = w.source();
    std::vector<int> remaining(action.components().begin(), action.components().end());
    while (u != w.sink()) {
      bool advanced = false;
      for (int e : w.out_edges(u)) {
        auto it = std::find(remaining.begin(), remaining.end(), e);
        if (it != remaining.end() && is_available(e)) {
          remaining.erase(it);
          u = w.edge(e).head;
          advanced = true;
          break;
        }
      }
      if (!advanced) return false;
    }
    return remaining.empty();
  }

  /// Feasible action minimizing the summed weight; ties go to the lexicographically smallest
  /// component set. Throws EmptyDecisionSet when no action is feasible.
  [[nodiscard]] Action argmin(std::span<const double> weights) const {
    check_weights(weights);
    if (empty()) throw EmptyDecisionSet("argmin over an empty decision set");
    if (kind_ == Kind::Grid) return grid_argmin(*world_, available_, weights);
    const Action* best = nullptr;
    double best_score = 0.0;
    for (const auto& a : actions_) {
      const double score = score_of(a, weights);
      if (best == nullptr || score < best_score) {
        best = &a;
        best_score = score;
      }
    }
    return *best;
  }

  /// Feasible action containing component `j` that minimizes the summed weight.
  [[nodiscard]] Action argmin_through(int j, std::span<const double> weights) const {
    check_weights(weights);
    if (!is_available(j)) throw EmptyDecisionSet("no feasible action contains the requested component");
    if (kind_ == Kind::Explicit) {
      const Action* best = nullptr;
      double best_score = 0.0;
      for (const auto& a : actions_) {
        if (!a.contains(j)) continue;
        const double score = score_of(a, weights);
        if (best == nullptr || score < best_score) {
          best = &a;
          best_score = score;
        }
      }
      return *best;
    }
    // Every path through j beats every path avoiding it once j carries a large enough discount.
    double scale = 1.0;
    for (double w : weights) scale += std::abs(w);
    std::vector<double> forced(weights.begin(), weights.end());
    forced[static_cast<std::size_t>(j)] -= 2.0 * scale;
    return grid_argmin(*world_, available_, forced);
  }

  /// Summed weight over the action's components, accumulated in ascending component order.
  static double score_of(const Action& action, std::span<const double> weights) {
    double score = 0.0;
    for (int i : action.components()) score += weights[static_cast<std::size_t>(i)];
    return score;
  }

 private:
  void check_weights(std::span<const double> weights) const {
    if (static_cast<int>(weights.size()) != d_) {
      throw std::invalid_argument("weight vector does not match the decision set dimension");
    }
  }

  void finish(const std::string& tag) {
    components_.clear();
    for (int i = 0; i < d_; ++i) {
      if (available_[static_cast<std::size_t>(i)]) components_.push_back(i);
    }
    digest_ = tag + ":" + hex_mask(available_);
    if (kind_ == Kind::Explicit && !singletons_) {
      for (const auto& a : actions_) {
        EdgeMask mask(static_cast<std::size_t>(d_), 0);
        for (int i : a.components()) mask[static_cast<std::size_t>(i)] = 1;
        digest_ += "|" + hex_mask(mask);
      }
    }
  }

  static std::string hex_mask(const EdgeMask& mask) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(mask.size() / 4 + 1);
    for (std::size_t i = 0; i < mask.size(); i += 4) {
      int nibble = 0;
      for (std::size_t b = 0; b < 4 && i + b < mask.size(); ++b) {
        if (mask[i + b]) nibble |= 1 << b;
      }
      out.push_back(kHex[nibble]);
    }
    return out;
  }

  int d_ = 0;
  Kind kind_ = Kind::Explicit;
  bool singletons_ = false;
  std::vector<Action> actions_;
  std::shared_ptr<const GridWorld> world_;
  EdgeMask available_;
  std::vector<int> components_;
  std::string digest_;
};

/// D_t of a decision set.
inline std::vector<int> available_components(const DecisionSet& set) {
  auto span = set.available_components();
  return {span.begin(), span.end()};
}

}  // namespace sleepcat

#endif
