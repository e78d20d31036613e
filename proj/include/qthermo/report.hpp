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

// Row-by-row inequality report over a recorded trajectory.

#include <string>
#include <vector>

#include "qthermo/constitutive.hpp"
#include "qthermo/observables.hpp"
#include "qthermo/record.hpp"

namespace qthermo {

struct RowReport {
  double t = 0;
  /// False when a temperature in the row is not positive; the chain is then
  /// not evaluated.
  bool chain_evaluated = false;
  ExchangeChainReport chain;
  AdiabaticClass adiabatic;
  ReversibilityReport reversibility;
  double sigma = 0;
};

struct TrajectoryReport {
  std::vector<RowReport> rows;
  long chain_violations = 0;
  long chain_skipped = 0;
  long strong_adiabatic = 0;
  long weak_adiabatic = 0;
  long reversible = 0;
  long canonical = 0;
  double min_sigma = 0;
  /// Largest |S1 + S2 - S|, |S1_dot + S2_dot - S_dot| and external gap seen.
  double max_s_deficiency = 0;
  double max_s_dot_deficiency = 0;
  double max_xi_ex_gap = 0;

  /// No chain violation and no negative production beyond 1e-10.
  bool passed() const;
};

TrajectoryReport analyze(const std::vector<ThermoRecord>& records);

std::string report_text(const TrajectoryReport& report);

/// Summary plus per-row arrays (t, chain link values, classification,
/// reversibility and deficiency series).
std::string report_json(const TrajectoryReport& report, const std::vector<ThermoRecord>& records);

}  // namespace qthermo
