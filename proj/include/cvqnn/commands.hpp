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

#include "cvqnn/charts.hpp"
#include "cvqnn/config.hpp"
#include "cvqnn/harness.hpp"
#include "cvqnn/results_io.hpp"
#include "cvqnn/selftest.hpp"

#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace cvqnn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Fixed-width table of aggregate rows: group, target, n, mean, min.
inline void print_summary(const std::vector<AggregateRow>& rows, std::ostream& os) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-24s %-10s %4s %12s %12s\n", "group", "target", "n",
                "mean_mse", "min_mse");
  os << buf;
  for (const auto& r : rows) {
    RunResult probe;
    probe.model_id = r.model_id;
    probe.activation = r.activation;
    probe.layers = r.layers;
    std::snprintf(buf, sizeof buf, "%-24s %-10s %4zu %12.4e %12.4e\n",
                  group_label(probe).c_str(), std::string(target_name(r.target)).c_str(),
                  r.n_seeds, r.mean_mse, r.min_mse);
    os << buf;
  }
}

/// Runs the configured experiment and exports its results.
inline int cmd_run(const std::filesystem::path& config_path,
                   const std::map<std::string, std::string>& overrides,
                   std::ostream& out, std::ostream& err, bool progress = true) {
  RunConfig cfg;
  try {
    cfg = load_config(config_path, overrides);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  }

  ProgressFn report;
  if (progress) {
    report = [&err](const RunResult& r, std::size_t done, std::size_t total) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "[%zu/%zu] %s seed=%llu test_mse=%s%s\n", done, total,
                    group_label(r).c_str(), static_cast<unsigned long long>(r.seed),
                    format_double(r.test_mse).c_str(), r.failed ? " (failed)" : "");
      err << buf;
    };
  }

  std::vector<RunResult> results;
  try {
    results = run_experiment(cfg.spec, report);
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (r.failed) {
      ++failed;
      err << "warning: " << group_label(r) << " seed " << r.seed << " failed: " << r.failure
          << '\n';
    }
  }
  const auto rows = aggregate(results);
  try {
    const auto summary = export_results(results, rows, cfg.output_dir);
    out << "wrote " << summary.runs_csv.string() << ", " << summary.aggregates_csv.string()
        << " and " << summary.curves.size() << " curve file(s)\n";
  } catch (const std::exception& e) {
    err << "export failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  print_summary(rows, out);
  if (!results.empty() && failed == results.size()) {
    err << "every run failed\n";
    return kExitRuntime;
  }
  return kExitOk;
}

/// Recomputes aggregates.csv (and SVG charts) from a results directory.
inline int cmd_report(const std::filesystem::path& results_dir, bool charts,
                      std::ostream& out, std::ostream& err) {
  std::vector<RunResult> results;
  try {
    results = read_runs_csv(results_dir / "runs.csv");
  } catch (const CsvError& e) {
    err << "report failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  if (results.empty()) err << "warning: runs.csv has no runs\n";
  const auto rows = aggregate(results);
  try {
    detail::write_file(results_dir / "aggregates.csv",
                       [&](std::ostream& os) { write_aggregates_csv(rows, os); });
    if (charts) {
      for (const auto& p : write_svg_charts(rows, results_dir)) {
        out << "wrote " << p.string() << '\n';
      }
    }
  } catch (const std::exception& e) {
    err << "report failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  print_summary(rows, out);
  return kExitOk;
}

inline int cmd_selftest(const CutoffConfig& cfg, bool list_only, std::ostream& out) {
  if (list_only) {
    for (const auto& check : selftest_checks()) out << check.name << '\n';
    return kExitOk;
  }
  return run_selftest(cfg, out) ? kExitOk : kExitRuntime;
}

}  // namespace cvqnn
