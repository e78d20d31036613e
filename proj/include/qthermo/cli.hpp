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

#pragma once

// Command implementations behind the qthermo executable. Each returns the
// process exit code: 0 pass, 1 property or inequality failure, 2 input error.

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "qthermo/checks.hpp"

namespace qthermo {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int input_error = 2;
}  // namespace exit_code

/// Writes trajectory.csv, summary.json and (unless `plots` is false)
/// plots.svg into out_dir.
int cmd_run(const std::filesystem::path& scenario, const std::filesystem::path& out_dir,
            std::ostream& out, std::ostream& err, bool plots = true);

int cmd_check(const std::string& suite, const CheckOptions& options, std::ostream& out,
              std::ostream& err);

/// Text report on `out`; JSON instead when `json` is set.
int cmd_report(const std::filesystem::path& csv, bool json, std::ostream& out, std::ostream& err);

}  // namespace qthermo
