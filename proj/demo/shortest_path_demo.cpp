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

// Shortest paths on a 4x4 grid whose edges fail at random. Only the edges of the chosen path
// report their delay. Compares the sleeping bandit learner against a uniformly random path.

#include <sleepcat/sleepcat.hpp>

#include <iomanip>
#include <iostream>
#include <memory>
#include <vector>

int main() {
  using namespace sleepcat;
  constexpr long kRounds = 5000;
  auto world = std::make_shared<const GridWorld>(4, 4, 0.85);
  const ProblemDims dims = world->dims(kRounds);

  Rng env_rng(2026);
  RandomWalkLosses delays(dims.d, 0.01, env_rng);
  std::vector<DecisionSet> sets;
  std::vector<LossVector> losses;
  for (long t = 0; t < kRounds; ++t) {
    sets.push_back(draw_grid_set(world, env_rng));
    losses.push_back(step_losses(delays, env_rng));
  }

  SleepingCatBandit cat(dims.d, schedule_eta(dims, EtaSource::SemiBandit), schedule_M(dims), 7, 8);
  UniformLearner uniform(9);

  const auto oracles = index_oracles(sets);
  std::cout << "grid 4x4, " << dims.d << " edges, paths of " << dims.m << " edges, " << kRounds << " rounds\n";
  for (Learner* learner : std::vector<Learner*>{&cat, &uniform}) {
    const auto logs = play(*learner, sets, losses);
    const auto table = best_fixed_policy(logs, losses, oracles);
    const auto trace = regret_trace(logs, table);
    std::cout << std::left << std::setw(18) << learner->name() << " regret " << std::fixed << std::setprecision(2)
              << trace.final_regret() << "  (rounds without a path: " << trace.skip_count << ")\n";
  }
}
