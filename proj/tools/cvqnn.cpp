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

#include "cvqnn/commands.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Continuous-variable QNN vs. MLP regression benchmarks"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Train every configured model and export results");
  std::string config_path;
  run->add_option("config", config_path, "JSON experiment config")->required();
  bool quiet = false;
  run->add_flag("--quiet", quiet, "Do not print per-run progress");
  std::map<std::string, std::string> raw;
  for (const auto& [flag, pointer] : cvqnn::config_fields()) {
    run->add_option("--" + flag, raw[flag], "Override " + pointer.substr(1));
  }

  auto* report = app.add_subcommand("report", "Recompute aggregates and charts from runs.csv");
  std::string results_dir;
  report->add_option("results_dir", results_dir, "Directory holding runs.csv")->required();
  bool no_charts = false;
  report->add_flag("--no-charts", no_charts, "Skip the SVG charts");

  auto* selftest = app.add_subcommand("selftest", "Run the fast analytic oracle checks");
  std::size_t cutoff = cvqnn::CutoffConfig::kDefaultDim;
  selftest->add_option("--cutoff", cutoff, "Fock cutoff dimension");
  bool list_only = false;
  selftest->add_flag("--list", list_only, "List check names without running them");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cvqnn::kExitOk : cvqnn::kExitUsage;
  }

  if (*run) {
    std::map<std::string, std::string> overrides;
    for (const auto& [flag, value] : raw) {
      if (run->count("--" + flag) > 0) overrides[flag] = value;
    }
    return cvqnn::cmd_run(config_path, overrides, std::cout, std::cerr, !quiet);
  }
  if (*report) return cvqnn::cmd_report(results_dir, !no_charts, std::cout, std::cerr);
  try {
    return cvqnn::cmd_selftest(cvqnn::CutoffConfig(cutoff), list_only, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return cvqnn::kExitUsage;
  }
}
