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

#ifndef SLEEPCAT_FPL_HPP
#define SLEEPCAT_FPL_HPP

#include <sleepcat/core.hpp>
#include <sleepcat/decision_set.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

/**
 * \file
 * \brief Follow-the-Perturbed-Leader action selection and its parameter schedules.
 */

namespace sleepcat {

/// Uniform draw on (0, 1].
template <std::uniform_random_bit_generator Rng>
double uniform_open_closed(Rng& rng) {
  return 1.0 - std::generate_canonical<double, std::numeric_limits<double>::digits>(rng);
}

struct Perturbation {
  std::vector<double> z;
};

/// Standard exponential perturbation by inversion, z_i = -ln(u_i).
inline Perturbation perturbation_from_uniforms(std::span<const double> uniforms) {
  Perturbation p;
  p.z.reserve(uniforms.size());
  for (double u : uniforms) {
    if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("uniform draw outside (0, 1]");
    p.z.push_back(-std::log(u));
  }
  return p;
}

template <std::uniform_random_bit_generator Rng>
Perturbation sample_perturbation(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("sample_perturbation: d must be positive");
  Perturbation p;
  p.z.resize(static_cast<std::size_t>(d));
  for (auto& z : p.z) z = -std::log(uniform_open_closed(rng));
  return p;
}

enum class EtaSource { Manual, FullInfo, Restricted, RestrictedBeta, SemiBandit };

inline std::string_view to_string(EtaSource source) {
  switch (source) {
    case EtaSource::Manual:
      return "manual";
    case EtaSource::FullInfo:
      return "fullinfo";
    case EtaSource::Restricted:
      return "restricted";
    case EtaSource::RestrictedBeta:
      return "restricted-beta";
    case EtaSource::SemiBandit:
      return "semibandit";
  }
  return "unknown";
}

inline EtaSource parse_eta_source(std::string_view name) {
  for (auto s : {EtaSource::Manual, EtaSource::FullInfo, EtaSource::Restricted,
                 EtaSource::RestrictedBeta, EtaSource::SemiBandit}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown learning-rate schedule: " + std::string(name));
}

struct LearningRate {
  double eta = 1.0;
  EtaSource source = EtaSource::Manual;
};

/// Fixed-horizon learning rate for the given schedule. Logarithms are natural.
/**
 * `extra` carries the schedule's input: the comparator loss L* for FullInfo (defaults to
 * m*T, then floored at 4(ln d + 1)), the availability lower bound beta for RestrictedBeta,
 * and the rate itself for Manual.
 */
inline LearningRate schedule_eta(const ProblemDims& dims, EtaSource source, std::optional<double> extra = {}) {
  dims.validate();
  if (extra && !(*extra > 0.0)) throw std::invalid_argument("schedule_eta: extra parameter must be positive");
  const double d = dims.d;
  const double m = dims.m;
  const double T = static_cast<double>(dims.T);
  const double log_term = std::log(d) + 1.0;
  switch (source) {
    case EtaSource::Manual:
      if (!extra) throw std::invalid_argument("schedule_eta: manual rate needs a value");
      return {*extra, source};
    case EtaSource::FullInfo: {
      const double best_loss = std::max(extra.value_or(m * T), 4.0 * log_term);
      return {std::sqrt(log_term / best_loss), source};
    }
    case EtaSource::Restricted:
      return {std::sqrt(log_term / (2.0 * d * T)), source};
    case EtaSource::RestrictedBeta: {
      if (!extra || *extra > 1.0) throw std::invalid_argument("schedule_eta: beta must lie in (0, 1]");
      return {std::sqrt(*extra * log_term / (2.0 * T)), source};
    }
    case EtaSource::SemiBandit:
      return {std::pow(std::sqrt(m) * log_term / (2.0 * d * T), 2.0 / 3.0), source};
  }
  throw std::invalid_argument("schedule_eta: unknown source");
}

struct ResamplingBudget {
  long M = 1;
  double unrounded = 1.0;
};

/// Truncation level of geometric resampling paired with the semi-bandit learning rate.
inline ResamplingBudget schedule_M(const ProblemDims& dims) {
  dims.validate();
  const double log_term = std::log(static_cast<double>(dims.d)) + 1.0;
  const double value = std::cbrt(static_cast<double>(dims.d) * static_cast<double>(dims.T) /
                                 (std::sqrt(2.0) * dims.m * log_term)) /
                       std::sqrt(std::exp(1.0));
  return {std::max(1L, std::lround(value)), value};
}

/// Perturbed scores eta * L - z written into `out`.
inline void perturbed_scores(std::span<const double> cum_est, double eta, std::span<const double> z,
                             std::vector<double>& out) {
  if (cum_est.size() != z.size()) throw std::invalid_argument("perturbation does not match the estimate vector");
  out.resize(cum_est.size());
  for (std::size_t i = 0; i < cum_est.size(); ++i) out[i] = eta * cum_est[i] - z[i];
}

/// argmin over the decision set of v^T (eta * L - z).
inline Action fpl_select(const DecisionSet& set, std::span<const double> cum_est, const LearningRate& eta,
                         const Perturbation& perturbation) {
  if (set.empty()) throw EmptyDecisionSet("fpl_select: empty decision set");
  std::vector<double> scores;
  perturbed_scores(cum_est, eta.eta, perturbation.z, scores);
  return set.argmin(scores);
}

}  // namespace sleepcat

#endif
