// Copyright 2026 The cvqnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "cvqnn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvqnn {

enum class ChartAxis { kLayers, kParams };

namespace detail {

inline const char* series_color(const std::string& activation) {
  if (activation == "tanh") return "#1f4fd8";
  if (activation == "sigmoid") return "#1a9641";
  if (activation == "relu") return "#c51b8a";
  return "#000000";
}

}  // namespace detail

/// Mean test MSE (log scale) against depth or parameter count, one series per
/// activation plus the QNN, with mean +- std error bars.
inline void write_svg_chart(const std::vector<AggregateRow>& rows, ChartAxis axis,
                            TargetKind target, std::ostream& os) {
  constexpr double kWidth = 640, kHeight = 420;
  constexpr double kLeft = 70, kRight = 140, kTop = 30, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  struct Point {
    double x, mean, lo, hi;
  };
  std::map<std::string, std::vector<Point>> series;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& r : rows) {
    if (r.target != target || !(r.mean_mse > 0.0)) continue;
    const double x = static_cast<double>(axis == ChartAxis::kLayers ? r.layers : r.params);
    const double lo = std::max(r.mean_mse - r.std_mse, r.min_mse);
    const double hi = r.mean_mse + r.std_mse;
    series[r.activation].push_back({x, r.mean_mse, lo, hi});
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, lo > 0.0 ? lo : r.mean_mse);
    ymax = std::max(ymax, hi);
  }
  if (series.empty()) {
    xmin = 0, xmax = 1, ymin = 1e-3, ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  const double dec_lo = std::floor(std::log10(ymin));
  const double dec_hi = std::max(std::ceil(std::log10(ymax)), dec_lo + 1);
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double y) {
    return kTop + (dec_hi - std::log10(y)) / (dec_hi - dec_lo) * plot_h;
  };

  char buf[256];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                "fill=\"none\" stroke=\"black\"/>\n",
                kLeft, kTop, plot_w, plot_h);
  os << buf;
  for (double d = dec_lo; d <= dec_hi; d += 1.0) {
    const double y = py(std::pow(10.0, d));
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">1e%d</text>\n",
                  kLeft, y, kLeft + plot_w, y, kLeft - 6, y + 4, static_cast<int>(d));
    os << buf;
  }
  std::vector<double> ticks;
  for (const auto& [name, pts] : series) {
    for (const auto& p : pts) ticks.push_back(p.x);
  }
  std::sort(ticks.begin(), ticks.end());
  ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
  for (double t : ticks) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%g</text>\n",
                  px(t), kTop + plot_h + 18, t);
    os << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n"
                "<text x=\"18\" y=\"%.1f\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 18 %.1f)\">test MSE (%s)</text>\n",
                kLeft + plot_w / 2, kHeight - 12,
                axis == ChartAxis::kLayers ? "layers" : "parameters",
                kTop + plot_h / 2, kTop + plot_h / 2,
                std::string(target_name(target)).c_str());
  os << buf;

  double legend_y = kTop + 10;
  for (auto& [name, pts] : series) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
      return a.x < b.x || (a.x == b.x && a.mean < b.mean);
    });
    const char* color = detail::series_color(name);
    if (axis == ChartAxis::kLayers && pts.size() > 1) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
      for (const auto& p : pts) {
        std::snprintf(buf, sizeof buf, "%.1f,%.1f ", px(p.x), py(p.mean));
        os << buf;
      }
      os << "\"/>\n";
    }
    for (const auto& p : pts) {
      const double cx = px(p.x), cy = py(p.mean);
      std::snprintf(buf, sizeof buf,
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\"/>\n",
                    cx, py(p.lo), cx, py(p.hi), color);
      os << buf;
      if (name == kQuantumLabel) {
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.1f\" y=\"%.1f\" width=\"8\" height=\"8\" fill=\"%s\"/>\n",
                      cx - 4, cy - 4, color);
      } else {
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3.5\" fill=\"%s\"/>\n", cx, cy,
                      color);
      }
      os << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"10\" height=\"10\" fill=\"%s\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\">%s</text>\n",
                  kLeft + plot_w + 15, legend_y - 9, color, kLeft + plot_w + 30,
                  legend_y, name.c_str());
    os << buf;
    legend_y += 18;
  }
  os << "</svg>\n";
}

/// Writes mse_vs_<axis>_<target>.svg for every target present in `rows`.
inline std::vector<std::filesystem::path> write_svg_charts(
    const std::vector<AggregateRow>& rows, const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> written;
  for (TargetKind target : {TargetKind::kSine, TargetKind::kHeaviside}) {
    for (Strategy strategy : {Strategy::kLayers, Strategy::kParameters}) {
      std::vector<AggregateRow> subset;
      for (const auto& r : rows) {
        if (r.target == target && r.strategy == strategy) subset.push_back(r);
      }
      if (subset.empty()) continue;
      const ChartAxis axis =
          strategy == Strategy::kLayers ? ChartAxis::kLayers : ChartAxis::kParams;
      const auto path = out_dir / ("mse_vs_" +
                                   std::string(axis == ChartAxis::kLayers ? "layers" : "params") +
                                   "_" + std::string(target_name(target)) + ".svg");
      std::ofstream os(path, std::ios::trunc);
      if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
      write_svg_chart(subset, axis, target, os);
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace cvqnn
