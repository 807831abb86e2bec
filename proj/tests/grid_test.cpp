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

#include "checks.hpp"

#include <sleepcat/sleepcat.hpp>

#include <gtest/gtest.h>

#include <memory>
#include <random>
#include <set>

namespace sleepcat {
namespace {

TEST(GridWorld, EdgeCounts) {
  EXPECT_EQ(GridWorld(3, 3).num_edges(), 12);
  EXPECT_EQ(GridWorld(10, 10).num_edges(), 180);
  EXPECT_EQ(GridWorld(4, 7).num_edges(), 4 * 6 + 7 * 3);
  EXPECT_EQ(GridWorld(10, 10).path_length(), 18);
  const auto dims = GridWorld(3, 3).dims(100);
  EXPECT_EQ(dims.d, 12);
  EXPECT_EQ(dims.m, 4);
}

TEST(GridWorld, EdgesPointRightOrUp) {
  const GridWorld w(4, 5);
  for (int e = 0; e < w.num_edges(); ++e) {
    const int step = w.edge(e).head - w.edge(e).tail;
    EXPECT_TRUE(step == 1 || step == w.cols());
    EXPECT_LT(w.edge(e).tail, w.edge(e).head);
  }
  EXPECT_THROW(GridWorld(1, 1), std::invalid_argument);
  EXPECT_THROW(GridWorld(2, 2, 1.5), std::invalid_argument);
}

TEST(GridWorld, PathCountsMatchEnumeration) {
  const GridWorld w(4, 4);
  std::mt19937_64 rng(11);
  std::bernoulli_distribution keep(0.7);
  for (int trial = 0; trial < 200; ++trial) {
    EdgeMask kept(static_cast<std::size_t>(w.num_edges()));
    for (auto& k : kept) k = keep(rng);
    const auto count = count_paths_to_sink(w, kept);
    EXPECT_EQ(count[0], static_cast<double>(oracle::enumerate_paths(w, kept).size()));
  }
  EXPECT_EQ(count_paths_to_sink(w, EdgeMask(24, 1))[0], 20.0);  // C(6, 3)
}

TEST(DrawGridSet, CertainAvailabilityKeepsEveryEdge) {
  auto w = std::make_shared<const GridWorld>(3, 3, 1.0);
  Rng rng(1);
  const auto set = draw_grid_set(w, rng);
  EXPECT_EQ(set.available_components().size(), 12u);
  EXPECT_FALSE(set.empty());
}

TEST(DrawGridSet, IsolatedSourceIsInfeasible) {
  auto w = std::make_shared<const GridWorld>(3, 3);
  EdgeMask kept(12, 1);
  for (int e : w->out_edges(w->source())) kept[static_cast<std::size_t>(e)] = 0;
  const auto set = DecisionSet::grid(w, kept);
  EXPECT_TRUE(set.empty());
  EXPECT_TRUE(set.available_components().empty());
  EXPECT_THROW(grid_argmin(*w, kept, std::vector<double>(12, 1.0)), Infeasible);
  EXPECT_THROW((void)set.argmin(std::vector<double>(12, 1.0)), EmptyDecisionSet);
}

TEST(DrawGridSet, PrunedSetIsUnionOfAvailablePaths) {
  auto w = std::make_shared<const GridWorld>(3, 3, 0.7);
  Rng rng(5);
  std::bernoulli_distribution keep(0.7);
  for (int trial = 0; trial < 500; ++trial) {
    EdgeMask kept(12);
    for (auto& k : kept) k = keep(rng);
    std::set<int> on_path;
    for (const auto& p : oracle::enumerate_paths(*w, kept)) on_path.insert(p.begin(), p.end());
    const auto set = DecisionSet::grid(w, kept);
    EXPECT_EQ(available_components(set), std::vector<int>(on_path.begin(), on_path.end()));
    // Forward reachability alone is a superset.
    const auto forward = w->forward_reachable(kept);
    for (int e : on_path) EXPECT_TRUE(forward[static_cast<std::size_t>(e)]);
  }
}

TEST(GridArgmin, TwoByTwoHandExample) {
  const GridWorld w(2, 2);
  // e0: 0->1, e1: 2->3 (rightward); e2: 0->2, e3: 1->3 (upward).
  const std::vector<double> weights{0.1, 0.2, 0.5, 0.9};
  EXPECT_EQ(grid_argmin(w, EdgeMask(4, 1), weights), (Action{1, 2}));
}

TEST(GridArgmin, EqualWeightsPickLexicographicallySmallestPath) {
  const GridWorld w(3, 3);
  const std::vector<double> weights(12, 1.0);
  const auto all = oracle::enumerate_paths(w, EdgeMask(12, 1));
  EXPECT_EQ(all.size(), 6u);
  EXPECT_EQ(oracle::to_vector(grid_argmin(w, EdgeMask(12, 1), weights)), *std::min_element(all.begin(), all.end()));
}

TEST(GridArgmin, MatchesEnumerationIncludingTiesAndNegativeWeights) {
  const auto [total, bad] = checks::grid_argmin_mismatches(300, 17);
  EXPECT_EQ(total, 1500);
  EXPECT_EQ(bad, 0);
}

TEST(GridDecisionSet, ContainsAndArgminThrough) {
  auto w = std::make_shared<const GridWorld>(3, 3);
  const auto set = DecisionSet::grid(w, EdgeMask(12, 1));
  const std::vector<double> weights{0.9, 0.1, 0.4, 0.3, 0.7, 0.2, 0.5, 0.6, 0.8, 0.05, 0.15, 0.25};
  const auto paths = oracle::enumerate_paths(*w, EdgeMask(12, 1));
  for (const auto& p : paths) EXPECT_TRUE(set.contains(Action(p)));
  EXPECT_FALSE(set.contains(Action{0, 1, 2, 3}));
  EXPECT_FALSE(set.contains(Action{0}));
  for (int j = 0; j < 12; ++j) {
    std::vector<std::vector<int>> through;
    for (const auto& p : paths) {
      if (std::find(p.begin(), p.end(), j) != p.end()) through.push_back(p);
    }
    EXPECT_EQ(oracle::to_vector(set.argmin_through(j, weights)), *oracle::brute_argmin(through, weights));
  }
}

TEST(DecisionSetDigest, DependsOnAvailabilityOnly) {
  auto w = std::make_shared<const GridWorld>(3, 3);
  EdgeMask a(12, 1), b(12, 1);
  for (int e : w->out_edges(w->node(0, 1))) b[static_cast<std::size_t>(e)] = 0;
  EXPECT_EQ(DecisionSet::grid(w, a).digest(), DecisionSet::grid(w, EdgeMask(12, 1)).digest());
  EXPECT_NE(DecisionSet::grid(w, a).digest(), DecisionSet::grid(w, b).digest());
  const int arms[] = {0, 2};
  EXPECT_NE(DecisionSet::singletons(3, arms).digest(), DecisionSet::from_actions(3, {Action{0, 2}}).digest());
}

}  // namespace
}  // namespace sleepcat
