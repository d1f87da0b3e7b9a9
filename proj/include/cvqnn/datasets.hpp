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

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cvqnn {

enum class TargetKind { kSine, kHeaviside };

inline std::string_view target_name(TargetKind k) {
  return k == TargetKind::kSine ? "sine" : "heaviside";
}

inline TargetKind parse_target(std::string_view name) {
  if (name == "sine") return TargetKind::kSine;
  if (name == "heaviside") return TargetKind::kHeaviside;
  throw std::invalid_argument("unknown target '" + std::string(name) +
                              "' (expected sine or heaviside)");
}

/// sin(pi x), or the step 0 for x < 0 and 1 for x >= 0.
inline double target(TargetKind kind, double x) {
  if (kind == TargetKind::kSine) return std::sin(std::numbers::pi * x);
  return x < 0.0 ? 0.0 : 1.0;
}

/// n evenly spaced points on [-1, 1], both endpoints included.
inline std::vector<double> uniform_grid(std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("uniform_grid needs n >= 2, got " +
                                std::to_string(n));
  }
  std::vector<double> xs(n);
  const double step = 2.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = -1.0 + step * static_cast<double>(i);
  xs.back() = 1.0;
  return xs;
}

struct Dataset {
  std::vector<double> inputs;
  std::vector<double> targets;
  TargetKind target_kind = TargetKind::kSine;

  std::size_t size() const { return inputs.size(); }
};

inline Dataset make_dataset(TargetKind kind, std::size_t n) {
  Dataset d;
  d.target_kind = kind;
  d.inputs = uniform_grid(n);
  d.targets.reserve(n);
  for (double x : d.inputs) d.targets.push_back(target(kind, x));
  return d;
}

/// Training set plus the denser grid used for test error and fit curves.
struct RegressionTask {
  Dataset train;
  Dataset test;

  static RegressionTask make(TargetKind kind, std::size_t train_points = 20,
                             std::size_t test_points = 200) {
    return {make_dataset(kind, train_points), make_dataset(kind, test_points)};
  }
};

inline void write_csv(const Dataset& d, std::ostream& os) {
  os << "x,y\n";
  char buf[64];
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", d.inputs[i], d.targets[i]);
    os << buf;
  }
}

inline void write_csv(const Dataset& d, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(d, os);
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace cvqnn
