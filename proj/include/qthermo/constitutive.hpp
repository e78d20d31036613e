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

// Constitutive closures: the kappa heat-conduction law, the contact-temperature
// root finder, the default isolated/exchange weight-rate models, constraint
// audits, adiabatic classification and the reversibility condition.

#include <functional>
#include <span>

#include "qthermo/observables.hpp"

namespace qthermo {

/// Heat conductivities (energy/time). All must be positive.
struct HeatConduction {
  double kappa_ex = 1;
  double kappa_ex_1 = 1;
  double kappa_ex_2 = 1;
  double kappa_int_1 = 1;
  double kappa_int_2 = 1;

  void validate() const;
  bool operator==(const HeatConduction&) const = default;
};

/// pairwise: the zero-mean bivector model. inert_partition: additionally keeps
/// the part level energies conserved (for H^12 = 0 with distinct part
/// temperatures).
enum class IsoMode { pairwise, inert_partition };

struct ConstitutiveModel {
  double alpha = 1;  ///< isolated-channel strength, 1/time
  HeatConduction conduction;
  IsoMode iso_mode = IsoMode::pairwise;

  void validate() const;
  bool operator==(const ConstitutiveModel&) const = default;
};

/// Q = kappa (1/theta - 1/T_box).
double heat_conduction_law(double kappa, double theta, double t_box);

struct RootResult {
  double value = 0;
  bool zero_everywhere = false;  ///< |Q| vanished at both bracket ends and the midpoint
  int iterations = 0;
};

/// Bisection for the T_box at which Q changes sign. Throws NoSignChangeError
/// when Q(lo) Q(hi) > 0.
RootResult find_contact_temperature(const std::function<double(double)>& heat_of_tbox, double lo,
                                    double hi);

/// alpha (g2 (g1 . f2) - g1 (g2 . f2)) with g the zero-mean projections.
RealVector iso_rates_pairwise(const RealVector& f1, const RealVector& f2, double alpha);

/// -alpha |g2|^2 P f1, with P the projection off span{1, conserved...}.
RealVector iso_rates_conserving(const RealVector& f1, const RealVector& f2,
                                std::span<const RealVector> conserved, double alpha);

/// Exchange rates s d, d = P0 levels minus its component along P0 f, scaled so
/// that (s d) . levels = heat. Throws UnreachableExchangeError when d . levels
/// vanishes and heat does not.
RealVector ex_rates_along(const RealVector& f, const RealVector& levels, double heat);

RealVector iso_rates(const Ensemble& ens, const HermitianOperator& h, double theta, double Z,
                     double alpha, const Units& units = {});

RealVector ex_rates(const Ensemble& ens, const HermitianOperator& h, double theta, double Z,
                    const HeatConduction& conduction, double t_box, const Units& units = {});

struct ConstraintAudit {
  double production = 0;          ///< -dp_iso . f^I
  double entropy_exchange = 0;    ///< dp_ex . f^II
  double exchange_residual = 0;   ///< dp . f^II - dp_ex . f^II
  double entropy_rate_residual = 0;  ///< -dp . f^I - (production + entropy_exchange)
  double orthogonality = 0;       ///< dp_ex . f

  bool production_ok = false;
  bool exchange_ok = false;
  bool entropy_rate_ok = false;
  bool orthogonality_ok = false;

  bool all() const { return production_ok && exchange_ok && entropy_rate_ok && orthogonality_ok; }
};

ConstraintAudit constraint_audit(const Ensemble& ens, const RateSplit& rates,
                                 const HermitianOperator& h, double theta, double Z,
                                 const Units& units = {});

enum class Adiabatic { none, weak, strong };

struct AdiabaticClass {
  Adiabatic kind = Adiabatic::none;
  double balance_residual = 0;  ///< Q1_ex + Q2_ex, zero in the weak case
};

AdiabaticClass classify_adiabatic(double q_ex, double q1_ex, double q2_ex);

struct ReversibilityReport {
  bool reversible = false;
  bool canonical_case = false;  ///< f^I = -f^II up to a constant
  double production = 0;
  double iso_norm = 0;
  double f1_spread = 0;
};

ReversibilityReport reversibility_check(const Ensemble& ens, const RateSplit& rates,
                                        const HermitianOperator& h, double theta, double Z,
                                        const Units& units = {});

/// Decision on already-evaluated scalars, shared with trajectory reports.
ReversibilityReport reversibility_from(double production, double iso_norm, double f1_spread,
                                       double f_spread);

/// kappa_1 (1/theta1 - 1/theta) + kappa_2 (1/theta2 - 1/theta), the conduction
/// form of -Q12_ex.
double interaction_external_heat(const HeatConduction& c, double theta1, double theta2,
                                 double theta);

/// kappa_int_1 (1/theta1 - 1/theta12) + kappa_int_2 (1/theta2 - 1/theta12),
/// the conduction form of -Q12_int.
double interaction_internal_heat(const HeatConduction& c, double theta1, double theta2,
                                 double theta12);

/// kappa^A_ex = Q^A_ex / (1/theta^A - 1/T_box); empty when the denominator vanishes.
std::optional<double> fit_conductivity(double heat, double theta, double t_box);

}  // namespace qthermo
