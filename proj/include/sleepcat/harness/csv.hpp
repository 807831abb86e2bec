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

#ifndef SLEEPCAT_HARNESS_CSV_HPP
#define SLEEPCAT_HARNESS_CSV_HPP

#include <sleepcat/evaluation.hpp>
#include <sleepcat/harness/format.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sleepcat::harness {

inline constexpr std::string_view kTraceHeader =
    "experiment,sweep_value,replicate,learner,t,cum_learner_loss,cum_comparator_loss,cum_regret\n";
inline constexpr std::string_view kSummaryHeader = "experiment,sweep_value,learner,mean_final_regret,std_error,n\n";

/// Appends the trace rows of one learner. Every `stride`-th round is written, plus the last one.
inline void append_trace_rows(std::string& out, std::string_view experiment, double sweep_value, int replicate,
                              std::string_view learner, const RegretTrace& trace, long stride = 1) {
  const std::string prefix = std::string(experiment) + "," + format_double(sweep_value) + "," +
                             std::to_string(replicate) + "," + std::string(learner) + ",";
  const auto n = static_cast<long>(trace.cum_regret.size());
  for (long k = 0; k < n; ++k) {
    const long t = k + 1;
    if (t % stride != 0 && t != n) continue;
    const auto i = static_cast<std::size_t>(k);
    out += prefix;
    out += std::to_string(t);
    out += ',';
    out += format_double(trace.cum_learner_loss[i]);
    out += ',';
    out += format_double(trace.cum_comparator_loss[i]);
    out += ',';
    out += format_double(trace.cum_regret[i]);
    out += '\n';
  }
}

struct SummaryRow {
  std::string experiment;
  double sweep_value = 0.0;
  std::string learner;
  double mean_final_regret = 0.0;
  double std_error = 0.0;
  long n = 0;
};

/// Mean and standard error of the mean; the error is 0 for fewer than two samples.
inline std::pair<double, double> mean_and_std_error(const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  const double variance = sq / static_cast<double>(values.size() - 1);
  return {mean, std::sqrt(variance / static_cast<double>(values.size()))};
}

inline std::string format_summary(const std::vector<SummaryRow>& rows) {
  std::string out(kSummaryHeader);
  for (const auto& r : rows) {
    out += r.experiment + "," + format_double(r.sweep_value) + "," + r.learner + "," +
           format_double(r.mean_final_regret) + "," + format_double(r.std_error) + "," + std::to_string(r.n) + "\n";
  }
  return out;
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Parsed CSV with a header row; fields are not quoted in any file this project writes.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::runtime_error("CSV schema error: missing column '" + std::string(name) + "'");
  }
};

inline CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t start = 0;
  bool first = true;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t p = 0;
    while (true) {
      const auto comma = line.find(',', p);
      fields.emplace_back(line.substr(p, comma == std::string_view::npos ? std::string_view::npos : comma - p));
      if (comma == std::string_view::npos) break;
      p = comma + 1;
    }
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != table.header.size()) throw std::runtime_error("CSV schema error: ragged row");
      table.rows.push_back(std::move(fields));
    }
  }
  if (first) throw std::runtime_error("CSV schema error: no header row");
  return table;
}

}  // namespace sleepcat::harness

#endif
