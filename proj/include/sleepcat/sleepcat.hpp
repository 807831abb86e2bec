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

#ifndef SLEEPCAT_SLEEPCAT_HPP
#define SLEEPCAT_SLEEPCAT_HPP

// Learning library. Needs nothing beyond the standard library.
#include <sleepcat/baselines.hpp>
#include <sleepcat/core.hpp>
#include <sleepcat/decision_set.hpp>
#include <sleepcat/environments.hpp>
#include <sleepcat/estimators.hpp>
#include <sleepcat/evaluation.hpp>
#include <sleepcat/fpl.hpp>
#include <sleepcat/grid.hpp>
#include <sleepcat/learners.hpp>

#endif
