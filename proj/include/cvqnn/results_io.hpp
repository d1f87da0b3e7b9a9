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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cvqnn {

inline constexpr std::string_view kRunsHeader =
    "model_id,target,strategy,layers,params,activation,seed,train_mse,test_mse,"
    "leakage_flag,runtime_s";
inline constexpr std::string_view kAggregatesHeader =
    "model_id,target,strategy,layers,params,activation,n_seeds,mean_mse,std_mse,"
    "min_mse";
inline constexpr std::string_view kCurveHeader = "x,y_pred,y_true";

/// Malformed results file; the message names the file and row.
class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline void write_runs_csv(const std::vector<RunResult>& results, std::ostream& os) {
  os << kRunsHeader << '\n';
  char runtime[32];
  for (const auto& r : results) {
    std::snprintf(runtime, sizeof runtime, "%.6f", r.runtime_seconds);
    os << r.model_id << ',' << target_name(r.target) << ','
       << strategy_name(r.strategy) << ',' << r.layers << ',' << r.params << ','
       << r.activation << ',' << r.seed << ',' << format_double(r.train_mse) << ','
       << format_double(r.test_mse) << ',' << (r.leakage_flag ? 1 : 0) << ','
       << runtime << '\n';
  }
}

inline void write_aggregates_csv(const std::vector<AggregateRow>& rows,
                                 std::ostream& os) {
  os << kAggregatesHeader << '\n';
  for (const auto& a : rows) {
    os << a.model_id << ',' << target_name(a.target) << ','
       << strategy_name(a.strategy) << ',' << a.layers << ',' << a.params << ','
       << a.activation << ',' << a.n_seeds << ',' << format_double(a.mean_mse)
       << ',' << format_double(a.std_mse) << ',' << format_double(a.min_mse)
       << '\n';
  }
}

inline void write_curve_csv(const std::vector<CurvePoint>& curve, std::ostream& os) {
  os << kCurveHeader << '\n';
  for (const auto& p : curve) {
    os << format_double(p.x) << ',' << format_double(p.y_pred) << ','
       << format_double(p.y_true) << '\n';
  }
}

namespace detail {

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& body) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  body(os);
  os.flush();
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace detail

/// Best (minimum test MSE) successful run of every aggregate group.
inline std::map<std::string, const RunResult*> best_runs(
    const std::vector<RunResult>& results) {
  std::map<std::string, const RunResult*> best;
  for (const auto& r : results) {
    if (r.failed || !std::isfinite(r.test_mse)) continue;
    const std::string key = group_label(r) + "_" + std::string(target_name(r.target));
    auto it = best.find(key);
    if (it == best.end() || r.test_mse < it->second->test_mse) best[key] = &r;
  }
  return best;
}

struct ExportSummary {
  std::filesystem::path runs_csv;
  std::filesystem::path aggregates_csv;
  std::vector<std::filesystem::path> curves;
};

/// Writes runs.csv, aggregates.csv and curve_<group>_<target>.csv for the
/// best run of each group. Existing files are overwritten.
inline ExportSummary export_results(const std::vector<RunResult>& results,
                                    const std::vector<AggregateRow>& aggregates,
                                    const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " + out_dir.string() +
                             ": " + ec.message());
  }
  ExportSummary summary;
  summary.runs_csv = out_dir / "runs.csv";
  summary.aggregates_csv = out_dir / "aggregates.csv";
  detail::write_file(summary.runs_csv,
                     [&](std::ostream& os) { write_runs_csv(results, os); });
  detail::write_file(summary.aggregates_csv,
                     [&](std::ostream& os) { write_aggregates_csv(aggregates, os); });
  for (const auto& [key, run] : best_runs(results)) {
    if (run->fit_curve.empty()) continue;
    const auto path = out_dir / ("curve_" + key + ".csv");
    detail::write_file(path, [&](std::ostream& os) { write_curve_csv(run->fit_curve, os); });
    summary.curves.push_back(path);
  }
  return summary;
}

/// Parses a runs.csv written by write_runs_csv. Fit curves are not stored
/// there and come back empty; non-finite MSEs mark failed runs.
inline std::vector<RunResult> read_runs_csv(std::istream& is,
                                            const std::string& source = "runs.csv") {
  std::string line;
  if (!std::getline(is, line)) throw CsvError(source + ": missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRunsHeader) {
    throw CsvError(source + ": unexpected header '" + line + "'");
  }
  std::vector<RunResult> out;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = detail::split_fields(line);
    auto fail = [&](const std::string& what) -> CsvError {
      return CsvError(source + " row " + std::to_string(row) + ": " + what);
    };
    if (f.size() != 11) {
      throw fail("expected 11 fields, found " + std::to_string(f.size()));
    }
    auto to_uint = [&](std::string_view s, const char* name) {
      std::uint64_t v = 0;
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw fail(std::string(name) + " is not an integer: '" + std::string(s) + "'");
      }
      return v;
    };
    auto to_double = [&](std::string_view s, const char* name) {
      double v = 0.0;
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw fail(std::string(name) + " is not numeric: '" + std::string(s) + "'");
      }
      return v;
    };
    RunResult r;
    r.model_id = std::string(f[0]);
    try {
      r.target = parse_target(f[1]);
      r.strategy = parse_strategy(f[2]);
    } catch (const std::invalid_argument& e) {
      throw fail(e.what());
    }
    r.layers = to_uint(f[3], "layers");
    r.params = to_uint(f[4], "params");
    r.activation = std::string(f[5]);
    r.seed = to_uint(f[6], "seed");
    r.train_mse = to_double(f[7], "train_mse");
    r.test_mse = to_double(f[8], "test_mse");
    const auto flag = to_uint(f[9], "leakage_flag");
    if (flag > 1) throw fail("leakage_flag must be 0 or 1");
    r.leakage_flag = flag == 1;
    r.runtime_seconds = to_double(f[10], "runtime_s");
    r.failed = !std::isfinite(r.test_mse);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<RunResult> read_runs_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CsvError("cannot open " + path.string());
  return read_runs_csv(is, path.string());
}

/// CSV text with the trailing runtime column removed from every line; the
/// remainder is a pure function of the experiment configuration.
inline std::string without_runtime_column(std::string_view csv) {
  std::string out;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t end = csv.find('\n', start);
    if (end == std::string_view::npos) end = csv.size();
    const std::string_view line = csv.substr(start, end - start);
    const std::size_t comma = line.rfind(',');
    out += comma == std::string_view::npos ? line : line.substr(0, comma);
    out += '\n';
    start = end + 1;
  }
  return out;
}

}  // namespace cvqnn
