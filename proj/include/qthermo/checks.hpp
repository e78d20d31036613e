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

// Seeded property suites behind `qthermo check`.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qthermo {

enum class Suite { appendix1, appendix2, klein, secondlaw, settings, equilibrium };

std::optional<Suite> suite_from_name(std::string_view name);
std::string_view suite_name(Suite suite);
std::vector<std::string_view> suite_names();

struct CheckOptions {
  std::uint64_t seed = 1;
  /// Random cases per dimension (or per configuration) in each property.
  long cases = 100;
  /// Replaces the default model's alpha. Negative values are accepted here on
  /// purpose, to exercise the failure path.
  std::optional<double> alpha;
};

struct PropertyResult {
  std::string name;
  double tolerance = 0;
  bool lower_bound = false;  ///< value must be >= -tolerance rather than <= tolerance
  long passed = 0;
  long failed = 0;
  double worst = 0;          ///< largest residual, or smallest value for lower bounds
  std::string counterexample;  ///< JSON of the first (smallest) failing case

  bool ok() const { return failed == 0; }
};

struct CheckReport {
  Suite suite = Suite::appendix1;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool passed() const;
  /// One line per property, then counterexamples of failing ones.
  std::string text() const;
};

CheckReport run_check(Suite suite, const CheckOptions& options);

}  // namespace qthermo
