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

// Acceptance report: one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include "checks.hpp"

#include <sleepcat/harness.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace sleepcat;
using namespace sleepcat::harness;

// Tolerances.
constexpr double kSigmas = 4.0;
constexpr double kSublinearRatio = 2.6;
constexpr double kInitialPhaseTolerance = 0.20;
constexpr double kGridRuntimeLimitSeconds = 600.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!ok || detail.size() < 600) detail += (detail.empty() ? "" : "; ") + std::string(ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(double x, int precision = 4) {
  std::ostringstream out;
  out.precision(precision);
  out << x;
  return out.str();
}

unsigned jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

ExperimentConfig config_from(const std::string& text, const std::vector<std::string>& overrides = {}) {
  auto map = parse_config_text(text);
  for (const auto& o : overrides) apply_override(map, o);
  return ExperimentConfig::from_map(map);
}

ExperimentConfig preset(const std::string& name, const std::vector<std::string>& overrides = {}) {
  return config_from(*preset_text(name), overrides);
}

const LearnerResult& result_of(const RunRecord& r, const std::string& learner) {
  for (const auto& l : r.learners) {
    if (l.name == learner) return l;
  }
  throw std::runtime_error("no learner " + learner);
}

/// Mean final regret per sweep value for one learner.
std::map<double, double> mean_final(const std::vector<RunRecord>& records, const std::string& learner) {
  std::map<double, std::pair<double, int>> acc;
  for (const auto& r : records) {
    auto& [sum, n] = acc[r.sweep_value];
    sum += result_of(r, learner).trace.final_regret();
    ++n;
  }
  std::map<double, double> out;
  for (const auto& [v, sn] : acc) out[v] = sn.first / sn.second;
  return out;
}

/// Mean cumulative regret after t rounds, over all records.
double mean_curve_at(const std::vector<RunRecord>& records, const std::string& learner, long t) {
  double sum = 0.0;
  for (const auto& r : records) sum += result_of(r, learner).trace.cum_regret[static_cast<std::size_t>(t - 1)];
  return sum / static_cast<double>(records.size());
}

Outcome estimator_equivalence() {
  Outcome o;
  int checked = 0;
  for (bool semibandit : {false, true}) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto mismatch = checks::offline_mismatch(semibandit, seed);
      ++checked;
      if (mismatch) {
        o.require(false, *mismatch);
        return o;
      }
    }
  }
  o.require(true, std::to_string(checked) + " instances identical");
  return o;
}

Outcome unbiasedness() {
  Outcome o;
  for (double a : {0.3, 0.5, 0.9}) {
    const auto e = checks::restricted_unbiasedness(a);
    o.require(std::abs(e.mean - e.target) <= kSigmas * e.se,
              "restricted a=" + fmt(a) + " mean " + fmt(e.mean, 6) + " vs " + fmt(e.target) + " (se " + fmt(e.se, 2) + ")");
  }
  const auto components = checks::semibandit_truncation();
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    o.require(c.mean <= c.loss + kSigmas * c.se, "semi-bandit i=" + std::to_string(i) + " mean " + fmt(c.mean, 6) +
                                                     " <= loss " + fmt(c.loss) + " + 4se");
    o.require(std::abs(c.mean - c.oracle) <= kSigmas * c.se,
              "oracle " + fmt(c.oracle, 6) + " (se " + fmt(c.se, 2) + ")");
  }
  return o;
}

Outcome truncation_law() {
  Outcome o;
  for (double q : {0.25, 0.5, 0.9}) {
    for (long M : {1L, 3L, 10L}) {
      const auto e = checks::truncated_geometric(q, M);
      // For M = 1 the count is identically 1 and the standard error is 0.
      o.require(std::abs(e.mean - e.target) <= std::max(kSigmas * e.se, 1e-12),
                "q=" + fmt(q) + " M=" + std::to_string(M) + " " + fmt(e.mean, 5) + " vs " + fmt(e.target, 5));
    }
  }
  return o;
}

Outcome oracle_exactness() {
  Outcome o;
  const int fpl_bad = checks::fpl_select_mismatches(1000, 2024);
  o.require(fpl_bad == 0, "fpl_select " + std::to_string(fpl_bad) + "/1000 disagreements");
  const auto [total, bad] = checks::grid_argmin_mismatches(400, 2025);
  o.require(bad == 0, "grid_argmin " + std::to_string(bad) + "/" + std::to_string(total) + " disagreements (2x2..4x4)");
  return o;
}

Outcome regret_bounds() {
  Outcome o;
  const double log_term = std::log(5.0) + 1.0;
  const auto full = run_experiment(
      config_from("experiment = fullinfo-experts\nhorizon = 10000\narms = 5\nlearners = FullInfoFPL\nreplicates = 20"),
      jobs());
  double mean_regret = 0.0, mean_bound = 0.0, min_bound = std::numeric_limits<double>::infinity();
  for (const auto& r : full) {
    const auto& trace = result_of(r, "FullInfoFPL").trace;
    const double best = std::max(trace.cum_comparator_loss.back(), 4.0 * log_term);
    const double bound = 2.0 * std::sqrt(2.0 * best * log_term);
    mean_regret += trace.final_regret() / static_cast<double>(full.size());
    mean_bound += bound / static_cast<double>(full.size());
    min_bound = std::min(min_bound, bound);
  }
  o.require(mean_regret <= min_bound, "full-info mean regret " + fmt(mean_regret) + " <= smallest per-seed bound " +
                                          fmt(min_bound) + " (mean bound " + fmt(mean_bound) + ")");

  const auto restricted = run_experiment(config_from("experiment = restricted-experts\nhorizon = 10000\narms = 5\n"
                                                     "availability.p = 0.9\nlearners = SleepingCat\nreplicates = 20"),
                                         jobs());
  const double r = mean_final(restricted, "SleepingCat").begin()->second;
  const double bound = 2.0 * std::sqrt(2.0 * 5.0 * 10000.0 * log_term);
  o.require(r <= bound, "restricted mean regret " + fmt(r) + " <= " + fmt(bound));
  return o;
}

Outcome sublinearity() {
  Outcome o;
  auto at = [](long T) {
    const auto records = run_experiment(config_from("experiment = restricted-experts\nhorizon = " + std::to_string(T) +
                                                    "\narms = 5\navailability.p = 0.9\nlearners = SleepingCat\n"
                                                    "replicates = 20"),
                                        jobs());
    return mean_final(records, "SleepingCat").begin()->second;
  };
  const double r1 = at(2500), r4 = at(10000);
  o.require(r4 / r1 <= kSublinearRatio,
            "R(10000)/R(2500) = " + fmt(r4) + "/" + fmt(r1) + " = " + fmt(r4 / r1) + " <= " + fmt(kSublinearRatio));
  return o;
}

Outcome sweep_ordering() {
  Outcome o;
  std::vector<RunRecord> all;
  for (int seed = 1; seed <= 20; ++seed) {
    auto records = run_experiment(preset("fig2-left", {"replicates=1", "seed=" + std::to_string(seed)}), jobs());
    all.insert(all.end(), records.begin(), records.end());
  }
  const auto cat = mean_final(all, "SleepingCatBandit");
  const auto bsfpl = mean_final(all, "BSFPL");
  const auto uniform = mean_final(all, "Uniform");
  for (const auto& [p, c] : cat) {
    std::string line = "p=" + fmt(p) + " cat " + fmt(c) + " bsfpl " + fmt(bsfpl.at(p)) + " uniform " + fmt(uniform.at(p));
    bool ok = true;
    if (p >= 0.3 - 1e-9) ok = ok && c < uniform.at(p);
    if (p >= 0.5 - 1e-9) ok = ok && c < bsfpl.at(p);
    o.require(ok, line);
  }
  return o;
}

Outcome grid_experiments() {
  Outcome o;
  for (const std::string name : {"fig2-middle", "fig2-right"}) {
    const auto config = preset(name);
    const auto start = std::chrono::steady_clock::now();
    const auto records = run_experiment(config, jobs());
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const long T = config.horizon;
    const double cat = mean_curve_at(records, "SleepingCatBandit", T);
    const double comb = mean_curve_at(records, "CombBSFPL", T);
    const double uni = mean_curve_at(records, "Uniform", T);
    const std::string shape = std::to_string(config.grid_rows) + "x" + std::to_string(config.grid_cols);
    o.require(cat < comb && cat < uni,
              shape + " final cat " + fmt(cat) + " comb " + fmt(comb) + " uniform " + fmt(uni));
    const long t0 = resolve_bsfpl(config).t0;
    for (long t : {t0 / 4, t0 / 2, 3 * t0 / 4, t0}) {
      const double c = mean_curve_at(records, "CombBSFPL", t);
      const double u = mean_curve_at(records, "Uniform", t);
      o.require(std::abs(c - u) <= kInitialPhaseTolerance * std::abs(u),
                shape + " t=" + std::to_string(t) + " comb " + fmt(c) + " vs uniform " + fmt(u));
    }
    if (name == "fig2-right") {
      o.require(seconds < kGridRuntimeLimitSeconds, shape + " runtime " + fmt(seconds, 3) + " s");
    }
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto root = std::filesystem::temp_directory_path() / "sleepcat-acceptance";
  std::filesystem::remove_all(root);
  const std::vector<ExperimentConfig> configs = {
      config_from("experiment = grid-semibandit\nhorizon = 2000\ngrid.rows = 4\ngrid.cols = 4\nreplicates = 3"),
      config_from("experiment = sleeping-bandit-sweep\nhorizon = 1000\nreplicates = 2\nsweep.values = 0.2,0.7,1"),
      config_from("experiment = paired-stress\nhorizon = 500\nreplicates = 2"),
  };
  int verified = 0;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    std::string csv[2];
    for (int pass = 0; pass < 2; ++pass) {
      const auto dir = root / (std::to_string(k) + "-" + std::to_string(pass));
      write_outputs(configs[k], run_experiment(configs[k], jobs()), dir);
      csv[pass] = read_text_file(dir / "trace.csv") + read_text_file(dir / "summary.csv");
      if (pass == 1) continue;
      for (const auto& entry : std::filesystem::directory_iterator(dir / "records")) {
        const auto result = verify_record(entry.path());
        ++verified;
        if (!result.identical) o.require(false, "record " + entry.path().filename().string() + " differs");
      }
    }
    o.require(csv[0] == csv[1], "CSV identical across reruns of " + configs[k].to_map().at("experiment"));
  }
  o.require(true, std::to_string(verified) + " records verified");
  std::filesystem::remove_all(root);
  return o;
}

Outcome paired_stress() {
  Outcome o;
  const auto records = run_experiment(config_from("experiment = paired-stress\nhorizon = 10000\nreplicates = 20"), jobs());
  const auto means = mean_final(records, "SleepingCat");
  double previous = -std::numeric_limits<double>::infinity();
  for (const auto& [d, r] : means) {
    o.require(r > previous, "d=" + fmt(d) + " regret " + fmt(r));
    previous = r;
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"estimator equivalence", estimator_equivalence},
      {"unbiasedness", unbiasedness},
      {"geometric truncation law", truncation_law},
      {"oracle exactness", oracle_exactness},
      {"regret bounds", regret_bounds},
      {"sublinear growth", sublinearity},
      {"availability sweep ordering", sweep_ordering},
      {"grid shortest paths", grid_experiments},
      {"determinism", determinism},
      {"paired availability stress", paired_stress},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++failures;
    std::printf("%s C%zu %s (%.1fs): %s\n", outcome.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), seconds,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
