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

#ifndef SLEEPCAT_HARNESS_PLOT_HPP
#define SLEEPCAT_HARNESS_PLOT_HPP

#include <sleepcat/harness/csv.hpp>
#include <sleepcat/harness/format.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <vector>

/**
 * \file
 * \brief Static SVG regret plots from summary.csv and trace.csv.
 */

namespace sleepcat::harness {

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
  double err = 0.0;
};

struct PlotSeries {
  std::string label;
  std::vector<PlotPoint> points;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  bool markers = true;
  bool error_bars = false;
};

namespace detail {

inline std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

inline std::string tick_label(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", v);
  return buffer;
}

/// Roughly five round-numbered ticks covering [lo, hi].
inline std::vector<double> nice_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (raw <= step) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

inline const char* color(std::size_t i) {
  static constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  return kPalette[i % std::size(kPalette)];
}

}  // namespace detail

inline std::string render_svg(const PlotSpec& spec) {
  constexpr double kWidth = 640, kHeight = 420, kLeft = 70, kRight = 170, kTop = 40, kBottom = 55;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = 0.0, y_hi = 0.0;
  for (const auto& s : spec.series) {
    for (const auto& p : s.points) {
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_lo = std::min(y_lo, p.y - p.err);
      y_hi = std::max(y_hi, p.y + p.err);
    }
  }
  if (!std::isfinite(x_lo)) x_lo = 0.0, x_hi = 1.0;
  if (x_hi == x_lo) x_lo -= 0.5, x_hi += 0.5;
  if (y_hi == y_lo) y_hi = y_lo + 1.0;
  const double pad = 0.05 * (y_hi - y_lo);
  y_hi += pad;
  if (y_lo < 0.0) y_lo -= pad;

  auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto sy = [&](double y) { return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };
  using detail::num;

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         detail::xml_escape(spec.title) + "</text>\n";

  for (double t : detail::nice_ticks(x_lo, x_hi)) {
    svg += "<line x1=\"" + num(sx(t)) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" + num(sx(t)) + "\" y2=\"" +
           num(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(sx(t)) + "\" y=\"" + num(kTop + plot_h + 18) + "\" text-anchor=\"middle\">" +
           detail::tick_label(t) + "</text>\n";
  }
  for (double t : detail::nice_ticks(y_lo, y_hi)) {
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(sy(t)) + "\" x2=\"" + num(kLeft + plot_w) + "\" y2=\"" +
           num(sy(t)) + "\" stroke=\"#e0e0e0\"/>\n";
    svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(sy(t) + 4) + "\" text-anchor=\"end\">" +
           detail::tick_label(t) + "</text>\n";
  }
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) + "\" height=\"" +
         num(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 12) + "\" text-anchor=\"middle\">" +
         detail::xml_escape(spec.x_label) + "</text>\n";
  svg += "<text transform=\"translate(18 " + num(kTop + plot_h / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         detail::xml_escape(spec.y_label) + "</text>\n";

  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const auto& s = spec.series[i];
    const std::string c = detail::color(i);
    std::string points;
    for (const auto& p : s.points) points += num(sx(p.x)) + "," + num(sy(p.y)) + " ";
    svg += "<polyline fill=\"none\" stroke=\"" + c + "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    for (const auto& p : s.points) {
      if (spec.error_bars && p.err > 0.0) {
        svg += "<line x1=\"" + num(sx(p.x)) + "\" y1=\"" + num(sy(p.y - p.err)) + "\" x2=\"" + num(sx(p.x)) +
               "\" y2=\"" + num(sy(p.y + p.err)) + "\" stroke=\"" + c + "\"/>\n";
      }
      if (spec.markers) {
        svg += "<circle cx=\"" + num(sx(p.x)) + "\" cy=\"" + num(sy(p.y)) + "\" r=\"3\" fill=\"" + c + "\"/>\n";
      }
    }
    const double ly = kTop + 12 + 18 * static_cast<double>(i);
    const double lx = kLeft + plot_w + 12;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 20) + "\" y2=\"" + num(ly) +
           "\" stroke=\"" + c + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(lx + 26) + "\" y=\"" + num(ly + 4) + "\">" + detail::xml_escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

/// Final mean regret against the sweep value, with standard-error bars.
inline std::vector<PlotSpec> final_regret_plots(const CsvTable& summary) {
  const auto c_exp = summary.column("experiment");
  const auto c_x = summary.column("sweep_value");
  const auto c_learner = summary.column("learner");
  const auto c_mean = summary.column("mean_final_regret");
  const auto c_err = summary.column("std_error");
  std::map<std::string, PlotSpec> by_experiment;
  for (const auto& row : summary.rows) {
    auto& spec = by_experiment[row[c_exp]];
    if (spec.title.empty()) {
      spec.title = row[c_exp] + ": final regret";
      spec.x_label = "sweep value";
      spec.y_label = "mean final regret";
      spec.error_bars = true;
    }
    auto it = std::find_if(spec.series.begin(), spec.series.end(),
                           [&](const PlotSeries& s) { return s.label == row[c_learner]; });
    if (it == spec.series.end()) {
      spec.series.push_back({row[c_learner], {}});
      it = spec.series.end() - 1;
    }
    it->points.push_back({parse_double(row[c_x], "sweep_value"), parse_double(row[c_mean], "mean_final_regret"),
                          parse_double(row[c_err], "std_error")});
  }
  std::vector<PlotSpec> out;
  for (auto& [name, spec] : by_experiment) {
    for (auto& s : spec.series) {
      std::sort(s.points.begin(), s.points.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    }
    out.push_back(std::move(spec));
  }
  return out;
}

/// Cumulative regret against t, averaged over replicates; one plot per (experiment, sweep value).
inline std::vector<std::pair<std::string, PlotSpec>> cumulative_regret_plots(const CsvTable& trace) {
  const auto c_exp = trace.column("experiment");
  const auto c_x = trace.column("sweep_value");
  const auto c_learner = trace.column("learner");
  const auto c_t = trace.column("t");
  const auto c_regret = trace.column("cum_regret");
  (void)trace.column("replicate");
  // (experiment, sweep value) -> learner order + learner -> t -> (sum, count)
  struct Curve {
    std::vector<std::string> order;
    std::map<std::string, std::map<long, std::pair<double, long>>> sums;
  };
  std::map<std::pair<std::string, std::string>, Curve> curves;
  for (const auto& row : trace.rows) {
    auto& curve = curves[{row[c_exp], row[c_x]}];
    if (std::find(curve.order.begin(), curve.order.end(), row[c_learner]) == curve.order.end()) {
      curve.order.push_back(row[c_learner]);
    }
    auto& cell = curve.sums[row[c_learner]][parse_long(row[c_t], "t")];
    cell.first += parse_double(row[c_regret], "cum_regret");
    ++cell.second;
  }
  std::vector<std::pair<std::string, PlotSpec>> out;
  for (const auto& [key, curve] : curves) {
    PlotSpec spec;
    spec.title = key.first + " (sweep value " + key.second + "): cumulative regret";
    spec.x_label = "round t";
    spec.y_label = "mean cumulative regret";
    spec.markers = false;
    for (const auto& learner : curve.order) {
      PlotSeries s{learner, {}};
      for (const auto& [t, cell] : curve.sums.at(learner)) {
        s.points.push_back({static_cast<double>(t), cell.first / static_cast<double>(cell.second), 0.0});
      }
      spec.series.push_back(std::move(s));
    }
    out.emplace_back(key.first + "-" + key.second, std::move(spec));
  }
  return out;
}

/// Renders every plot for a summary file; the trace.csv next to it adds the cumulative curves.
/// Returns the files written.
inline std::vector<std::filesystem::path> render_plots(const std::filesystem::path& summary_path,
                                                       const std::filesystem::path& out_dir) {
  const CsvTable summary = parse_csv(read_text_file(summary_path));
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (const auto& spec : final_regret_plots(summary)) {
    const auto name = spec.title.substr(0, spec.title.find(':'));
    const auto path = out_dir / (name + "-final-regret.svg");
    write_text_file(path, render_svg(spec));
    written.push_back(path);
  }
  const auto trace_path = summary_path.parent_path() / "trace.csv";
  if (std::filesystem::exists(trace_path)) {
    for (const auto& [name, spec] : cumulative_regret_plots(parse_csv(read_text_file(trace_path)))) {
      const auto path = out_dir / (name + "-cumulative-regret.svg");
      write_text_file(path, render_svg(spec));
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace sleepcat::harness

#endif
