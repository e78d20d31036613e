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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qthermo/cli.hpp"
#include "qthermo/record.hpp"

using namespace qthermo;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qthermo_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::vector<ThermoRecord> load_csv(const fs::path& p) {
  std::ifstream in(p);
  return read_csv(in);
}

}  // namespace

TEST_CASE("run: bundled two-level scenario") {
  const fs::path out = scratch("two_level");
  std::ostringstream o, e;
  REQUIRE(cmd_run(QTHERMO_SCENARIO_DIR "/two_level_reservoir.json", out, o, e) == exit_code::ok);
  CHECK(fs::exists(out / "summary.json"));
  CHECK(fs::exists(out / "plots.svg"));
  const std::vector<ThermoRecord> rows = load_csv(out / "trajectory.csv");
  REQUIRE(rows.size() > 10);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].S >= rows[i - 1].S - 1e-12);
}

TEST_CASE("run: malformed Hermitian block") {
  const fs::path dir = scratch("malformed");
  write_file(dir / "bad.json", R"({
    "name": "bad",
    "dimensions": {"d1": 2, "d2": 1},
    "hamiltonian": {"H1": {"base": [[0, 1], [2, 1]]}},
    "initial": {"weights": "microcanonical"},
    "run": {"t_end": 1, "dt": 0.1}
  })");
  std::ostringstream o, e;
  CHECK(cmd_run(dir / "bad.json", dir / "out", o, e) == exit_code::input_error);
  CHECK(e.str().find("hamiltonian.H1.base") != std::string::npos);
}

TEST_CASE("run: t_end = 0") {
  const fs::path dir = scratch("t0");
  write_file(dir / "t0.json", R"({
    "name": "t0",
    "dimensions": {"d1": 2, "d2": 1},
    "hamiltonian": {"H1": {"base": [[0, 0], [0, 1]]}},
    "initial": {"weights": [0.7, 0.3], "frame": "eigen"},
    "run": {"t_end": 0, "dt": 0.1}
  })");
  std::ostringstream o, e;
  REQUIRE(cmd_run(dir / "t0.json", dir / "out", o, e, false) == exit_code::ok);
  CHECK(load_csv(dir / "out" / "trajectory.csv").size() == 1);
  CHECK_FALSE(fs::exists(dir / "out" / "plots.svg"));
}

TEST_CASE("check") {
  std::ostringstream o, e;
  CheckOptions opt;
  opt.seed = 7;
  opt.cases = 500;
  CHECK(cmd_check("appendix1", opt, o, e) == exit_code::ok);
  CHECK(cmd_check("klein", opt, o, e) == exit_code::ok);

  std::ostringstream bad_out, bad_err;
  opt.cases = 50;
  opt.alpha = -1.0;
  CHECK(cmd_check("secondlaw", opt, bad_out, bad_err) == exit_code::failure);
  CHECK(bad_out.str().find("counterexample") != std::string::npos);

  CHECK(cmd_check("nonsense", {}, o, e) == exit_code::input_error);
  CheckOptions zero;
  zero.cases = 0;
  CHECK(cmd_check("klein", zero, o, e) == exit_code::input_error);
}

TEST_CASE("report") {
  const fs::path dir = scratch("report");
  write_file(dir / "empty.csv", "");
  std::ostringstream o, e;
  CHECK(cmd_report(dir / "empty.csv", false, o, e) == exit_code::input_error);

  std::ostringstream ro, re;
  REQUIRE(cmd_run(QTHERMO_SCENARIO_DIR "/reservoir.json", dir / "res", ro, re, false) ==
          exit_code::ok);
  std::ostringstream text, err;
  CHECK(cmd_report(dir / "res" / "trajectory.csv", false, text, err) == exit_code::ok);
  CHECK(text.str().find("0 violations") != std::string::npos);
  std::ostringstream js;
  CHECK(cmd_report(dir / "res" / "trajectory.csv", true, js, err) == exit_code::ok);
  CHECK(js.str().find("\"chain_violations\": 0") != std::string::npos);
}
