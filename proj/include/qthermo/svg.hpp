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

// Fixed four-panel SVG of S, Sigma, Theta and E against t.

#include <string>
#include <vector>

#include "qthermo/record.hpp"

namespace qthermo {

/// Non-finite samples (e.g. an unbounded Theta) are left out of their panel.
std::string trajectory_svg(const std::vector<ThermoRecord>& records, const std::string& title = {});

}  // namespace qthermo
