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

namespace qthermo {

/// Physical constants. The theory never fixes a unit system, so both default
/// to one and are carried explicitly wherever they enter.
struct Units {
  double hbar = 1.0;
  double k_B = 1.0;

  bool operator==(const Units&) const = default;
};

}  // namespace qthermo
