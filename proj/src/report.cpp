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

#include "qthermo/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace qthermo {

namespace {

constexpr double sigma_tol = 1e-10;

const char* adiabatic_name(Adiabatic a) {
  switch (a) {
    case Adiabatic::strong: return "strong";
    case Adiabatic::weak: return "weak";
    default: return "none";
  }
}

const char* link_name(ChainLink l) {
  switch (l) {
    case ChainLink::parts_vs_compound: return "parts_vs_compound";
    case ChainLink::compound_vs_reservoir: return "compound_vs_reservoir";
    default: return "none";
  }
}

// JSON has no infinity; unbounded temperatures are written as null.
nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

}  // namespace

bool TrajectoryReport::passed() const { return chain_violations == 0 && min_sigma >= -sigma_tol; }

TrajectoryReport analyze(const std::vector<ThermoRecord>& records) {
  TrajectoryReport out;
  out.min_sigma = records.empty() ? 0.0 : INFINITY;
  for (const ThermoRecord& r : records) {
    RowReport row;
    row.t = r.t;
    row.sigma = r.Sigma;
    const HeatPart parts[] = {{r.Q_ex[0], r.Theta1}, {r.Q_ex[1], r.Theta2}, {r.Q_ex[2], r.Theta12}};
    row.chain_evaluated = r.Theta > 0 && r.T_box > 0 && r.Theta1 > 0 && r.Theta2 > 0 &&
                          r.Theta12 > 0;
    if (row.chain_evaluated) {
      row.chain = entropy_exchange_inequality(parts, r.Theta, r.T_box);
      if (row.chain.violation()) ++out.chain_violations;
    } else {
      ++out.chain_skipped;
    }
    row.adiabatic = classify_adiabatic(r.Q_ex_total(), r.Q_ex[0], r.Q_ex[1]);
    if (row.adiabatic.kind == Adiabatic::strong) ++out.strong_adiabatic;
    if (row.adiabatic.kind == Adiabatic::weak) ++out.weak_adiabatic;
    row.reversibility = reversibility_from(r.Sigma, r.p_iso_norm, r.fI_spread, r.f_spread);
    if (row.reversibility.reversible) ++out.reversible;
    if (row.reversibility.canonical_case) ++out.canonical;

    out.min_sigma = std::min(out.min_sigma, r.Sigma);
    out.max_s_deficiency = std::max(out.max_s_deficiency, std::abs(r.S_deficiency));
    out.max_s_dot_deficiency = std::max(out.max_s_dot_deficiency, std::abs(r.S_dot_deficiency));
    out.max_xi_ex_gap = std::max(out.max_xi_ex_gap, std::abs(r.Xi_ex_gap));
    out.rows.push_back(row);
  }
  return out;
}

std::string report_text(const TrajectoryReport& rep) {
  std::ostringstream os;
  const long n = long(rep.rows.size());
  os << "rows: " << n << "\n";
  os << "entropy-exchange chain: " << rep.chain_violations << " violations, "
     << rep.chain_skipped << " rows skipped (non-positive temperature)\n";
  for (const RowReport& row : rep.rows) {
    if (!row.chain.violation()) continue;
    os << "  t = " << row.t << ": " << link_name(row.chain.violated) << " ("
       << row.chain.parts_sum << " >= " << row.chain.compound << " >= " << row.chain.reservoir
       << ")\n";
  }
  os << "adiabatic rows: " << rep.strong_adiabatic << " strong, " << rep.weak_adiabatic
     << " weak\n";
  os << "reversible rows: " << rep.reversible << " (" << rep.canonical << " canonical)\n";
  os << "min Sigma: " << rep.min_sigma << "\n";
  os << "max |S1 + S2 - S|: " << rep.max_s_deficiency << "\n";
  os << "max |S1_dot + S2_dot - S_dot|: " << rep.max_s_dot_deficiency << "\n";
  os << "max |external entropy-exchange gap|: " << rep.max_xi_ex_gap << "\n";
  os << (rep.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string report_json(const TrajectoryReport& rep, const std::vector<ThermoRecord>& records) {
  using nlohmann::json;
  json rows = json::array();
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const RowReport& row = rep.rows[i];
    const ThermoRecord& r = records[i];
    json j{{"t", row.t},
           {"adiabatic", adiabatic_name(row.adiabatic.kind)},
           {"reversible", row.reversibility.reversible},
           {"canonical", row.reversibility.canonical_case},
           {"Sigma", row.sigma},
           {"S_deficiency", r.S_deficiency},
           {"S_dot_deficiency", r.S_dot_deficiency},
           {"Xi_ex_gap", r.Xi_ex_gap},
           {"Xi_int_sum", r.Xi_int_sum}};
    if (row.chain_evaluated) {
      j["chain"] = {{"parts", row.chain.parts_sum},
                    {"compound", row.chain.compound},
                    {"reservoir", row.chain.reservoir},
                    {"theta_plus", number(row.chain.theta_plus)},
                    {"theta_minus", number(row.chain.theta_minus)},
                    {"theta_consistent", row.chain.theta_consistent},
                    {"violated", link_name(row.chain.violated)}};
    } else {
      j["chain"] = nullptr;
    }
    rows.push_back(std::move(j));
  }
  json out{{"rows_total", rep.rows.size()},
           {"chain_violations", rep.chain_violations},
           {"chain_skipped", rep.chain_skipped},
           {"strong_adiabatic", rep.strong_adiabatic},
           {"weak_adiabatic", rep.weak_adiabatic},
           {"reversible", rep.reversible},
           {"canonical", rep.canonical},
           {"min_Sigma", number(rep.min_sigma)},
           {"max_S_deficiency", rep.max_s_deficiency},
           {"max_S_dot_deficiency", rep.max_s_dot_deficiency},
           {"max_Xi_ex_gap", rep.max_xi_ex_gap},
           {"passed", rep.passed()},
           {"rows", std::move(rows)}};
  return out.dump(2);
}

}  // namespace qthermo
