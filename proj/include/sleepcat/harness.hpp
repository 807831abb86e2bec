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

#ifndef SLEEPCAT_HARNESS_HPP
#define SLEEPCAT_HARNESS_HPP

// Experiment harness. Link OpenSSL::Crypto (seed derivation, trace hashes) and Threads.
#include <sleepcat/sleepcat.hpp>
#include <sleepcat/harness/config.hpp>
#include <sleepcat/harness/csv.hpp>
#include <sleepcat/harness/format.hpp>
#include <sleepcat/harness/plot.hpp>
#include <sleepcat/harness/record.hpp>
#include <sleepcat/harness/runner.hpp>
#include <sleepcat/harness/seeding.hpp>

#endif
