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

#include "oracles.hpp"

#include <sleepcat/sleepcat.hpp>

#include <gtest/gtest.h>

#include <memory>
#include <set>
#include <vector>

namespace sleepcat {
namespace {

TEST(IncurredLoss, InnerProduct) {
  EXPECT_DOUBLE_EQ(incurred_loss(Action{0, 2}, std::vector<double>{0.5, 0.9, 0.25}), 0.75);
  EXPECT_EQ(incurred_loss(Action{}, std::vector<double>{0.3, 0.1}), 0.0);
  EXPECT_EQ(incurred_loss(Action{0}, std::vector<double>{1, 1, 1}), 1.0);
  EXPECT_THROW(incurred_loss(Action{3}, std::vector<double>{1, 1, 1}), std::invalid_argument);
}

TEST(Action, SortedUniqueAndLexicographic) {
  const Action a{3, 1, 3, 0};
  EXPECT_EQ(std::vector<int>(a.components().begin(), a.components().end()), (std::vector<int>{0, 1, 3}));
  EXPECT_TRUE(a.contains(3));
  EXPECT_FALSE(a.contains(2));
  EXPECT_LT((Action{0, 2}), (Action{1}));
  EXPECT_LT((Action{0, 1}), (Action{0, 2}));
  EXPECT_THROW(a.validate(3, 3), std::invalid_argument);
  EXPECT_THROW(a.validate(4, 2), std::invalid_argument);
  EXPECT_NO_THROW(a.validate(4, 3));
}

TEST(ProblemDims, Validation) {
  EXPECT_NO_THROW((ProblemDims{5, 1, 10}.validate()));
  EXPECT_THROW((ProblemDims{2, 3, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((ProblemDims{2, 1, 0}.validate()), std::invalid_argument);
}

TEST(Losses, ValidateRange) {
  EXPECT_NO_THROW(validate_losses(std::vector<double>{0.0, 1.0, 0.5}));
  EXPECT_THROW(validate_losses(std::vector<double>{1.5}), std::invalid_argument);
  EXPECT_THROW(validate_losses(std::vector<double>{-0.1}), std::invalid_argument);
}

TEST(AvailableComponents, UnionOfSupports) {
  EXPECT_EQ(available_components(DecisionSet::from_actions(3, {Action{0}, Action{1}})), (std::vector<int>{0, 1}));
  EXPECT_EQ(available_components(DecisionSet::from_actions(3, {Action{0, 1}})), (std::vector<int>{0, 1}));
}

TEST(AvailableComponents, GridWithBridgeRemovedDropsUnreachableEdges) {
  auto w = std::make_shared<const GridWorld>(3, 3);
  // Remove the bottom-row edge out of the source: nodes (0,1) and (0,2) become unreachable.
  EdgeMask kept(12, 1);
  kept[0] = 0;
  std::set<int> on_path;
  for (const auto& p : oracle::enumerate_paths(*w, kept)) on_path.insert(p.begin(), p.end());
  const auto got = available_components(DecisionSet::grid(w, kept));
  EXPECT_EQ(got, std::vector<int>(on_path.begin(), on_path.end()));
  EXPECT_EQ(got.size(), 8u);  // the cut edge plus the three edges leaving the stranded nodes
}

TEST(Reveal, FeedbackExtent) {
  const auto set = DecisionSet::from_actions(4, {Action{0}, Action{2}, Action{3}});
  const std::vector<double> loss{0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(reveal(FeedbackScheme::FullInformation, set, Action{2}, loss).size(), 4u);
  const auto restricted = reveal(FeedbackScheme::Restricted, set, Action{2}, loss);
  ASSERT_EQ(restricted.size(), 3u);
  EXPECT_EQ(restricted[1], (std::pair<int, double>{2, 0.3}));
  const auto semi = reveal(FeedbackScheme::SemiBandit, set, Action{3}, loss);
  ASSERT_EQ(semi.size(), 1u);
  EXPECT_EQ(semi[0], (std::pair<int, double>{3, 0.4}));
}

}  // namespace
}  // namespace sleepcat
