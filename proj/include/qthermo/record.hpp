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

// One row of thermodynamic bookkeeping per recorded time, and its CSV form.

#include <iosfwd>
#include <string>
#include <vector>

namespace qthermo {

/// Per-part arrays are indexed 1, 2, 12.
struct ThermoRecord {
  double t = 0;
  double E = 0;
  double W_dot = 0;
  double Q_dot = 0;
  double S = 0;
  double S_dot = 0;
  double Xi = 0;
  double Sigma = 0;
  double Theta = 0;

  double Q_ex[3]{};
  double Q_int[3]{};
  double W_ex[3]{};
  double W_int[3]{};
  double Xi_ex[3]{};
  double Xi_int[3]{};

  double S1 = 0;
  double S2 = 0;
  double S_deficiency = 0;      ///< S1 + S2 - S
  double S_dot_deficiency = 0;  ///< S1_dot + S2_dot - S_dot
  double Xi_ex_gap = 0;         ///< Xi1_ex + Xi2_ex + Xi12_ex - Xi_ex
  double Xi_int_sum = 0;

  double T_box = 0;
  double Theta1 = 0;
  double Theta2 = 0;
  double Theta12 = 0;
  bool isolated = false;
  double p_iso_norm = 0;  ///< max |dp_iso|
  double fI_spread = 0;   ///< max |f^I - mean f^I|
  double f_spread = 0;    ///< max |f - mean f|

  /// Q1_ex + Q2_ex + Q12_ex.
  double Q_ex_total() const { return Q_ex[0] + Q_ex[1] + Q_ex[2]; }
};

/// Name of the first NaN column, or of the first infinite one other than
/// Theta and T_box; empty when the record is usable.
std::string first_non_finite(const ThermoRecord& r);

/// Column names in file order.
const std::vector<std::string>& record_columns();

std::string csv_header();
std::string csv_row(const ThermoRecord& r);

void write_csv(std::ostream& out, const std::vector<ThermoRecord>& records);

/// Throws InputError on a missing or mismatched header, a short row or an
/// unparsable number. `source` names the input in error messages.
std::vector<ThermoRecord> read_csv(std::istream& in, const std::string& source = "<csv>");

}  // namespace qthermo
