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

#include "qthermo/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qthermo/report.hpp"
#include "qthermo/scenario_io.hpp"
#include "qthermo/svg.hpp"

namespace qthermo {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(); }

json vector_json(const RealVector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json matrix_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ii = json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw InputError(path.string(), "cannot write file");
}

json summary_of(const Scenario& sc, const Trajectory& traj, const FirstLawAudit& law,
                const TrajectoryReport& rep) {
  const ThermoRecord& last = traj.records.back();
  const BipartiteSystem& fin = traj.final_state;
  return {
      {"scenario", sc.name},
      {"records", traj.records.size()},
      {"final",
       {{"t", last.t},
        {"E", last.E},
        {"S", last.S},
        {"Theta", number(last.Theta)},
        {"isolated", fin.isolated()},
        {"weights", vector_json(fin.state().weights.values())},
        {"frame", matrix_json(fin.state().frame.vectors())}}},
      {"statistics",
       {{"steps", traj.stats.steps},
        {"damping_events", traj.stats.damping_events},
        {"weight_repairs", traj.stats.weight_repairs},
        {"unreachable_exchange", traj.stats.unreachable_exchange},
        {"max_frame_error", traj.stats.max_frame_error},
        {"max_weight_drift", traj.stats.max_weight_drift}}},
      {"first_law",
       {{"points", law.points},
        {"max_deviation", law.max_deviation},
        {"threshold", law.threshold},
        {"passed", law.passed}}},
      {"inequalities",
       {{"chain_violations", rep.chain_violations},
        {"chain_skipped", rep.chain_skipped},
        {"min_Sigma", number(rep.min_sigma)},
        {"strong_adiabatic", rep.strong_adiabatic},
        {"weak_adiabatic", rep.weak_adiabatic},
        {"reversible", rep.reversible},
        {"passed", rep.passed()}}},
  };
}

}  // namespace

int cmd_run(const fs::path& scenario_path, const fs::path& out_dir, std::ostream& out,
            std::ostream& err, bool plots) {
  std::optional<Scenario> loaded;
  try {
    loaded = load_scenario(scenario_path);
    loaded->validate();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_code::input_error;
  } catch (const Error& e) {
    err << "input error: " << scenario_path.string() << ": " << e.what() << "\n";
    return exit_code::input_error;
  }
  const Scenario& sc = *loaded;

  std::optional<Trajectory> result;
  try {
    result = run(sc);
  } catch (const SimulationError& e) {
    err << "simulation failed: " << e.what() << "\n";
    return exit_code::failure;
  } catch (const Error& e) {
    err << "simulation failed: " << e.what() << "\n";
    return exit_code::failure;
  }
  const Trajectory& traj = *result;

  const FirstLawAudit law = first_law_audit(traj.records);
  const TrajectoryReport rep = analyze(traj.records);
  try {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw InputError(out_dir.string(), "cannot create directory: " + ec.message());
    std::ostringstream csv;
    write_csv(csv, traj.records);
    write_file(out_dir / "trajectory.csv", csv.str());
    write_file(out_dir / "summary.json", summary_of(sc, traj, law, rep).dump(2) + "\n");
    if (plots) write_file(out_dir / "plots.svg", trajectory_svg(traj.records, sc.name));
  } catch (const InputError& e) {
    err << "output error: " << e.what() << "\n";
    return exit_code::input_error;
  }
  out << sc.name << ": " << traj.records.size() << " records, " << traj.stats.steps
      << " steps, written to " << out_dir.string() << "\n";
  return exit_code::ok;
}

int cmd_check(const std::string& suite_text, const CheckOptions& options, std::ostream& out,
              std::ostream& err) {
  const std::optional<Suite> suite = suite_from_name(suite_text);
  if (!suite) {
    err << "unknown suite '" << suite_text << "'\n";
    return exit_code::input_error;
  }
  if (options.cases < 1) {
    err << "--cases must be positive\n";
    return exit_code::input_error;
  }
  const CheckReport report = run_check(*suite, options);
  out << report.text();
  return report.passed() ? exit_code::ok : exit_code::failure;
}

int cmd_report(const fs::path& csv, bool as_json, std::ostream& out, std::ostream& err) {
  std::vector<ThermoRecord> records;
  try {
    std::ifstream f(csv, std::ios::binary);
    if (!f) throw InputError(csv.string(), "cannot open file");
    records = read_csv(f, csv.string());
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_code::input_error;
  }
  const TrajectoryReport rep = analyze(records);
  out << (as_json ? report_json(rep, records) + "\n" : report_text(rep));
  return rep.passed() ? exit_code::ok : exit_code::failure;
}

}  // namespace qthermo
