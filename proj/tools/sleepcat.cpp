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

// sleepcat command-line tool: run experiments, render plots, verify run records.

#include <sleepcat/harness.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

namespace sh = sleepcat::harness;

sh::ConfigMap load_config_or_preset(const std::string& source) {
  if (std::filesystem::exists(source)) return sh::load_config_file(source);
  if (auto text = sh::preset_text(source)) return sh::parse_config_text(*text);
  std::string names;
  for (const auto& n : sh::preset_names()) names += " " + n;
  throw std::runtime_error("no config file or preset named '" + source + "' (presets:" + names + ")");
}

int run_command(const std::string& source, const std::vector<std::string>& overrides, const std::string& out,
                const std::string& seed, int jobs) {
  sh::ConfigMap map = load_config_or_preset(source);
  for (const auto& o : overrides) sh::apply_override(map, o);
  if (!seed.empty()) map["seed"] = seed;
  if (!out.empty()) map["output.dir"] = out;
  const auto config = sh::ExperimentConfig::from_map(map);
  const std::filesystem::path dir = config.output_dir;
  sh::prepare_output_dir(dir);

  const auto points = config.sweep_points();
  std::cerr << "running " << sh::to_string(config.experiment) << ": " << points.size() << " point(s) x "
            << config.replicates << " replicate(s), " << config.learners.size() << " learner(s), jobs=" << jobs
            << "\n";
  const auto started = std::chrono::steady_clock::now();
  std::vector<sh::RunRecord> records;
  try {
    records = sh::run_experiment(config, jobs);
  } catch (const sh::RunFailure& failure) {
    sh::write_diagnostic(dir, failure);
    throw;
  }
  sh::write_outputs(config, records, dir);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  for (const auto& row : sh::summarize(records)) {
    std::cout << row.experiment << " sweep=" << sh::format_double(row.sweep_value) << " " << row.learner
              << " mean_final_regret=" << sh::format_double(row.mean_final_regret)
              << " std_error=" << sh::format_double(row.std_error) << " n=" << row.n << "\n";
  }
  std::cerr << "wrote " << (dir / "summary.csv").string() << ", " << (dir / "trace.csv").string() << " and "
            << records.size() << " record(s) in " << sh::format_double(std::round(seconds * 100) / 100) << " s\n";
  return 0;
}

int plot_command(const std::string& summary, const std::string& out) {
  const std::filesystem::path dir =
      out.empty() ? std::filesystem::path(summary).parent_path() / "plots" : std::filesystem::path(out);
  for (const auto& path : sh::render_plots(summary, dir)) std::cout << path.string() << "\n";
  return 0;
}

int verify_command(const std::string& record) {
  const auto result = sh::verify_record(record);
  if (result.identical) {
    std::cout << "OK " << record << "\n";
    return 0;
  }
  std::cout << "MISMATCH " << record << "\n";
  std::istringstream expected(result.expected), actual(result.actual);
  std::string a, b;
  while (true) {
    const bool more_a = static_cast<bool>(std::getline(expected, a));
    const bool more_b = static_cast<bool>(std::getline(actual, b));
    if (!more_a && !more_b) break;
    if (a != b || more_a != more_b) std::cout << "- " << (more_a ? a : "") << "\n+ " << (more_b ? b : "") << "\n";
    a.clear();
    b.clear();
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sleepcat: sleeping combinatorial bandits with follow-the-perturbed-leader"};
  app.set_version_flag("--version", std::string(sleepcat::kVersion));
  app.require_subcommand(1);

  std::string source, out, seed;
  std::vector<std::string> overrides;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* run = app.add_subcommand("run", "Run an experiment from a config file or a named preset");
  run->add_option("config", source, "Config file path or preset name (fig2-left, fig2-middle, fig2-right)")
      ->required();
  run->add_option("--set", overrides, "Override a config key: key=value (repeatable)");
  run->add_option("--out", out, "Output directory (overrides output.dir)");
  run->add_option("--seed", seed, "Master seed (overrides seed)");
  run->add_option("--jobs", jobs, "Run points concurrently")->check(CLI::PositiveNumber);

  std::string summary, plot_out;
  auto* plot = app.add_subcommand("plot", "Render SVG plots from summary.csv (and trace.csv next to it)");
  plot->add_option("summary", summary, "Path to summary.csv")->required()->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "Output directory (default: plots/ next to the summary)");

  std::string record;
  auto* verify = app.add_subcommand("verify", "Re-run a run record and compare it byte for byte");
  verify->add_option("record", record, "Path to a .rec file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return run_command(source, overrides, out, seed, jobs);
    if (*plot) return plot_command(summary, plot_out);
    if (*verify) return verify_command(record);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
