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

// Scenario files (JSON). Complex matrices are objects {"re": rows, "im": rows}
// with row-major nested arrays; "im" may be omitted, and a bare nested array
// is read as a real matrix.

#include <filesystem>
#include <string>

#include "qthermo/simulate.hpp"

namespace qthermo {

/// Throws InputError naming the offending field.
Scenario parse_scenario(const std::string& text, const std::string& source = "<scenario>");

Scenario load_scenario(const std::filesystem::path& path);

/// Fully explicit form: weights and frame are written out, so re-parsing
/// reproduces every numeric field exactly.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace qthermo
