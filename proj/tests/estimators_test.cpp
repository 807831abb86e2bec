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

#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace sleepcat {
namespace {

using checks::observe_all;

TEST(CatRestricted, AsleepRoundsAccrueTheLastObservation) {
  CatState s(2);
  const std::vector<double> loss{0.5, 0.2};
  const std::vector<int> both{0, 1}, only1{1};
  s.observe_restricted(1, both, observe_all(both, loss));
  EXPECT_EQ(s.cum_est()[0], 0.5);
  s.observe_restricted(2, only1, observe_all(only1, loss));
  EXPECT_EQ(s.cum_est()[0], 1.0);
  s.observe_restricted(3, only1, observe_all(only1, loss));
  EXPECT_EQ(s.cum_est()[0], 1.5);
  EXPECT_EQ(s.pending(0)->accrued, 3);
  EXPECT_EQ(s.finalized(0), 0.0);
  s.observe_restricted(4, both, observe_all(both, {0.1, 0.2}));
  EXPECT_EQ(s.finalized(0), 1.5);
  EXPECT_EQ(s.pending(0)->since, 4);
}

TEST(CatRestricted, AlwaysAwakeSumsTheLosses) {
  CatState s(3);
  Rng rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<int> all{0, 1, 2};
  std::vector<double> sums(3, 0.0);
  for (long t = 1; t <= 500; ++t) {
    const std::vector<double> loss{unit(rng), unit(rng), unit(rng)};
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(s.cum_est()[static_cast<std::size_t>(i)], sums[static_cast<std::size_t>(i)]);
      sums[static_cast<std::size_t>(i)] += loss[static_cast<std::size_t>(i)];
    }
    s.observe_restricted(t, all, observe_all(all, loss));
  }
  s.finalize_open();
  for (int i = 0; i < 3; ++i) EXPECT_EQ(s.cum_est()[static_cast<std::size_t>(i)], sums[static_cast<std::size_t>(i)]);
}

TEST(CatRestricted, ProtocolViolations) {
  CatState s(3);
  const std::vector<int> avail{0, 2};
  EXPECT_THROW(s.observe_restricted(2, avail, observe_all(avail, {0.1, 0.1, 0.1})), ProtocolViolation);
  EXPECT_THROW(s.observe_restricted(1, avail, {{0, 0.1}}), ProtocolViolation);
  EXPECT_THROW(s.observe_restricted(1, avail, {{0, 0.1}, {1, 0.1}}), ProtocolViolation);
  EXPECT_THROW(s.observe_restricted(1, avail, {{0, 0.1}, {2, 1.5}}), std::invalid_argument);
  // Failed calls leave the state untouched.
  EXPECT_NO_THROW(s.observe_restricted(1, avail, observe_all(avail, {0.1, 0.1, 0.1})));
  EXPECT_EQ(s.last_round(), 1);
}

TEST(CatSemiBandit, ResolvedAtNextAvailability) {
  CatState s(2);
  const std::vector<int> both{0, 1}, only1{1};
  s.observe_semibandit(1, both, Action{0}, {{0, 0.4}}, {{0, 2}});
  EXPECT_DOUBLE_EQ(s.cum_est()[0], 0.8);
  s.observe_semibandit(2, only1, Action{1}, {{1, 0.1}}, {{1, 1}});
  EXPECT_DOUBLE_EQ(s.cum_est()[0], 1.6);
  // Available but not played: the entry resolves and no new one opens.
  s.observe_semibandit(3, both, Action{1}, {{1, 0.1}}, {{1, 1}});
  EXPECT_DOUBLE_EQ(s.finalized(0), 1.6);
  EXPECT_FALSE(s.pending(0).has_value());
  EXPECT_DOUBLE_EQ(s.cum_est()[0], 1.6);
}

TEST(CatSemiBandit, AlwaysPlayedWithUnitCountsSumsTheLosses) {
  CatState s(1);
  const std::vector<int> all{0};
  double sum = 0.0;
  for (long t = 1; t <= 300; ++t) {
    const double l = static_cast<double>(t % 7) / 7.0;
    sum += l;
    s.observe_semibandit(t, all, Action{0}, {{0, l}}, {{0, 1}});
  }
  s.finalize_open();
  EXPECT_EQ(s.cum_est()[0], sum);
}

TEST(CatSemiBandit, ProtocolViolations) {
  CatState s(3);
  const std::vector<int> avail{0, 1};
  EXPECT_THROW(s.observe_semibandit(1, avail, Action{2}, {{2, 0.1}}, {{2, 1}}), ProtocolViolation);
  EXPECT_THROW(s.observe_semibandit(1, avail, Action{0}, {{0, 0.1}}, {}), ProtocolViolation);
  EXPECT_THROW(s.observe_semibandit(1, avail, Action{0}, {{0, 0.1}}, {{0, 0}}), ProtocolViolation);
  EXPECT_THROW(s.observe_semibandit(1, avail, Action{0}, {{1, 0.1}}, {{0, 1}}), ProtocolViolation);
  EXPECT_NO_THROW(s.observe_semibandit(1, avail, Action{0}, {{0, 0.1}}, {{0, 1}}));
}

TEST(CatFull, Sums) {
  CatState s(3);
  s.observe_full(1, std::vector<double>{0, 0, 0});
  EXPECT_EQ(s.cum_est()[1], 0.0);
  CatState ones(2);
  for (long t = 1; t <= 50; ++t) ones.observe_full(t, std::vector<double>{1, 1});
  EXPECT_EQ(ones.cum_est()[0], 50.0);
  CatState r(4);
  Rng rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> prefix(4, 0.0);
  for (long t = 1; t <= 100; ++t) {
    std::vector<double> l(4);
    for (std::size_t i = 0; i < 4; ++i) {
      l[i] = unit(rng);
      prefix[i] += l[i];
    }
    r.observe_full(t, l);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(r.cum_est()[i], prefix[i]);
  }
  EXPECT_THROW(r.observe_full(101, std::vector<double>{1}), std::invalid_argument);
}

TEST(CatOffline, RestrictedMatchesBitForBit) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto mismatch = checks::offline_mismatch(false, seed);
    ASSERT_FALSE(mismatch) << *mismatch;
  }
}

TEST(CatOffline, SemiBanditMatchesBitForBit) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto mismatch = checks::offline_mismatch(true, seed);
    ASSERT_FALSE(mismatch) << *mismatch;
  }
}

TEST(CatRestricted, UnbiasedUnderBernoulliAvailability) {
  for (double a : {0.3, 0.5, 0.9}) {
    const auto e = checks::restricted_unbiasedness(a);
    EXPECT_LE(std::abs(e.mean - e.target), 4.0 * e.se) << "a=" << a << " mean=" << e.mean << " se=" << e.se;
  }
}

TEST(GeometricResample, CapAndDeterministicCases) {
  Rng rng(1);
  const int arms[] = {0, 1, 2};
  const auto set = DecisionSet::singletons(3, arms);
  const std::vector<double> cum{0.0, 0.0, 0.0};
  EXPECT_EQ(geometric_resample(set, cum, {1.0}, Action{1}, {1, 1.0}, rng), (ResampleCounts{{1, 1}}));
  const int one[] = {2};
  const auto single = DecisionSet::singletons(3, one);
  for (int k = 0; k < 100; ++k) {
    EXPECT_EQ(geometric_resample(single, cum, {1.0}, Action{2}, {10, 10.0}, rng), (ResampleCounts{{2, 1}}));
  }
  EXPECT_THROW(geometric_resample(single, cum, {1.0}, Action{0}, {10, 10.0}, rng), ProtocolViolation);
  for (int k = 0; k < 1000; ++k) {
    const auto c = geometric_resample(set, cum, {1.0}, Action{0}, {5, 5.0}, rng);
    ASSERT_GE(c[0].second, 1);
    ASSERT_LE(c[0].second, 5);
  }
}

TEST(GeometricResample, GridCountsCoverEveryPlayedEdge) {
  auto w = std::make_shared<const GridWorld>(3, 3);
  const auto set = DecisionSet::grid(w, EdgeMask(12, 1));
  Rng rng(6);
  const std::vector<double> cum(12, 0.0);
  const Action path = set.argmin(std::vector<double>(12, 0.0));
  const auto c = geometric_resample(set, cum, {1.0}, path, {7, 7.0}, rng);
  ASSERT_EQ(c.size(), path.size());
  for (std::size_t k = 0; k < c.size(); ++k) EXPECT_EQ(c[k].first, path.components()[k]);
}

TEST(GeometricResample, TruncatedGeometricMean) {
  for (double q : {0.25, 0.5, 0.9}) {
    for (long M : {1L, 3L, 10L}) {
      const auto e = checks::truncated_geometric(q, M);
      if (M == 1) {
        EXPECT_EQ(e.mean, 1.0);
      } else {
        EXPECT_LE(std::abs(e.mean - e.target), 4.0 * e.se) << "q=" << q << " M=" << M;
      }
    }
  }
}

TEST(CatSemiBandit, TruncationBiasMatchesExhaustiveOracle) {
  const auto components = checks::semibandit_truncation();
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    EXPECT_LE(c.mean, c.loss + 4.0 * c.se) << "component " << i;
    EXPECT_LE(std::abs(c.mean - c.oracle), 4.0 * c.se) << "component " << i << " mean=" << c.mean << " oracle=" << c.oracle;
  }
  // The truncation bias is visible on this instance.
  EXPECT_LT(components[2].oracle, 0.9 * components[2].loss);
}

}  // namespace
}  // namespace sleepcat
