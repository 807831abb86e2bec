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

#ifndef SLEEPCAT_HARNESS_RECORD_HPP
#define SLEEPCAT_HARNESS_RECORD_HPP

#include <sleepcat/harness/config.hpp>
#include <sleepcat/harness/csv.hpp>
#include <sleepcat/harness/format.hpp>
#include <sleepcat/harness/runner.hpp>

#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

/**
 * \file
 * \brief Run records on disk, CSV emission and record verification.
 *
 * A record is a versioned `key = value` text file:
 *
 *     format = sleepcat-run-record/1
 *     library_version = 0.1.0
 *     experiment = grid-semibandit
 *     sweep_value = 0.9
 *     replicate = 3
 *     seed.<stream> = <u64>
 *     config.<key> = <value>
 *     result.<learner>.final_regret = <double>
 *     result.<learner>.skipped_rounds = <count>
 *     result.<learner>.trace_sha256 = <hex>
 *     wall_clock_seconds = <double>
 *
 * Every line except `wall_clock_seconds` is a deterministic function of the config and seeds.
 */

namespace sleepcat::harness {

inline constexpr std::string_view kRecordFormat = "sleepcat-run-record/1";
inline constexpr std::string_view kWallClockKey = "wall_clock_seconds";

inline std::string serialize_record(const RunRecord& record) {
  std::string out;
  auto line = [&out](const std::string& key, const std::string& value) { out += key + " = " + value + "\n"; };
  line("format", std::string(kRecordFormat));
  line("library_version", record.version);
  line("experiment", record.experiment);
  line("sweep_value", format_double(record.sweep_value));
  line("replicate", std::to_string(record.replicate));
  for (const auto& [stream, seed] : record.seeds) line("seed." + stream, std::to_string(seed));
  for (const auto& [key, value] : record.config) line("config." + key, value);
  for (const auto& l : record.learners) {
    line("result." + l.name + ".final_regret", format_double(l.trace.final_regret()));
    line("result." + l.name + ".skipped_rounds", std::to_string(l.trace.skip_count));
    line("result." + l.name + ".trace_sha256", l.trace_sha256);
  }
  line(std::string(kWallClockKey), format_double(record.wall_clock_seconds));
  return out;
}

/// What a record file pins down: enough to re-run its point.
struct ParsedRecord {
  ConfigMap lines;  ///< every line of the file, by key
  ConfigMap config;
  SeedMap seeds;
  double sweep_value = 0.0;
  int replicate = 0;
};

inline ParsedRecord parse_record(std::string_view text) {
  ParsedRecord parsed;
  parsed.lines = parse_config_text(text);
  const auto format = parsed.lines.find("format");
  if (format == parsed.lines.end() || format->second != kRecordFormat) {
    throw std::runtime_error("not a run record (expected format = " + std::string(kRecordFormat) + ")");
  }
  for (const auto& [key, value] : parsed.lines) {
    if (key.rfind("config.", 0) == 0) parsed.config[key.substr(7)] = value;
    if (key.rfind("seed.", 0) == 0) parsed.seeds[key.substr(5)] = parse_u64(value, key);
  }
  for (const char* required : {"sweep_value", "replicate", "experiment"}) {
    if (!parsed.lines.contains(required)) throw std::runtime_error(std::string("run record is missing ") + required);
  }
  parsed.sweep_value = parse_double(parsed.lines.at("sweep_value"), "sweep_value");
  parsed.replicate = static_cast<int>(parse_long(parsed.lines.at("replicate"), "replicate"));
  return parsed;
}

/// The record text with the wall-clock line removed.
inline std::string deterministic_part(std::string_view record_text) {
  std::string out;
  std::istringstream in{std::string(record_text)};
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).rfind(kWallClockKey, 0) == 0) continue;
    out += line + "\n";
  }
  return out;
}

struct VerifyResult {
  bool identical = false;
  std::string expected;  ///< deterministic part of the stored record
  std::string actual;    ///< deterministic part of the re-run
};

/// Re-runs the point of a stored record from its config and seeds and compares the results.
inline VerifyResult verify_record_text(std::string_view text) {
  const ParsedRecord parsed = parse_record(text);
  const ExperimentConfig config = ExperimentConfig::from_map(parsed.config);
  const RunRecord rerun = run_point(config, parsed.sweep_value, parsed.replicate, &parsed.seeds);
  VerifyResult result;
  result.expected = deterministic_part(text);
  result.actual = deterministic_part(serialize_record(rerun));
  result.identical = result.expected == result.actual;
  return result;
}

inline VerifyResult verify_record(const std::filesystem::path& path) { return verify_record_text(read_text_file(path)); }

inline std::string record_file_name(std::size_t point, int replicate) {
  return "point-" + std::to_string(point) + "-rep-" + std::to_string(replicate) + ".rec";
}

/// The two CSV files for a list of records.
inline std::string format_trace(const std::vector<RunRecord>& records, long stride = 1) {
  std::string out(kTraceHeader);
  for (const auto& record : records) {
    for (const auto& l : record.learners) {
      append_trace_rows(out, record.experiment, record.sweep_value, record.replicate, l.name, l.trace, stride);
    }
  }
  return out;
}

inline void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& dir, long stride = 1) {
  write_text_file(dir / "trace.csv", format_trace(records, stride));
  write_text_file(dir / "summary.csv", format_summary(summarize(records)));
}

/// Fails fast when the output directory cannot be created or written.
inline void prepare_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "records", ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  write_text_file(dir / ".write-test", "");
  std::filesystem::remove(dir / ".write-test", ec);
}

/// Writes records/, trace.csv, summary.csv and the resolved config.
inline void write_outputs(const ExperimentConfig& config, const std::vector<RunRecord>& records,
                          const std::filesystem::path& dir) {
  prepare_output_dir(dir);
  write_text_file(dir / "config.resolved", serialize_config(config.to_map()));
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto point = k / static_cast<std::size_t>(config.replicates);
    write_text_file(dir / "records" / record_file_name(point, records[k].replicate), serialize_record(records[k]));
  }
  emit_csv(records, dir, config.trace_stride);
}

/// Diagnostic left behind when a run aborts.
inline void write_diagnostic(const std::filesystem::path& dir, const RunFailure& failure) {
  std::string text = "format = sleepcat-diagnostic/1\n";
  text += "library_version = " + std::string(kVersion) + "\n";
  text += "experiment = " + failure.experiment + "\n";
  text += "sweep_value = " + format_double(failure.sweep_value) + "\n";
  text += "replicate = " + std::to_string(failure.replicate) + "\n";
  text += "error = " + failure.reason + "\n";
  write_text_file(dir / "diagnostic.rec", text);
}

}  // namespace sleepcat::harness

#endif
