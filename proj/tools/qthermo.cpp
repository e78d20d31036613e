// Copyright 2026 The qthermo Authors
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

#include <iostream>

#include <CLI11.hpp>

#include "qthermo/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qthermo: quantum thermodynamics of open and bipartite systems"};
  app.require_subcommand(1);

  std::string scenario, out_dir;
  bool no_plots = false;
  auto* run = app.add_subcommand("run", "Simulate a scenario file");
  run->add_option("scenario", scenario, "Scenario JSON")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_flag("--no-plots", no_plots, "Skip plots.svg");

  std::string suite;
  qthermo::CheckOptions options;
  double alpha = 0;
  auto* check = app.add_subcommand("check", "Run a property suite");
  check->add_option("suite", suite, "appendix1 | appendix2 | klein | secondlaw | settings | equilibrium")
      ->required();
  check->add_option("--seed", options.seed, "Master seed")->capture_default_str();
  options.cases = 500;
  check->add_option("--cases", options.cases, "Cases per dimension")->capture_default_str();
  auto* alpha_opt = check->add_option("--alpha", alpha, "Override the model's alpha");

  std::string csv;
  bool as_json = false;
  auto* report = app.add_subcommand("report", "Inequality report for a trajectory CSV");
  report->add_option("csv", csv, "trajectory.csv")->required();
  report->add_flag("--json", as_json, "Print JSON instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qthermo::exit_code::input_error;
  }

  try {
    if (*run) return qthermo::cmd_run(scenario, out_dir, std::cout, std::cerr, !no_plots);
    if (*check) {
      if (*alpha_opt) options.alpha = alpha;
      return qthermo::cmd_check(suite, options, std::cout, std::cerr);
    }
    return qthermo::cmd_report(csv, as_json, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qthermo::exit_code::failure;
  }
}
