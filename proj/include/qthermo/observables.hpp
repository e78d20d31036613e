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

// Thermodynamic functionals of an ensemble and its weight rates: energy,
// heat and power exchange, Shannon entropy and its rate, entropy exchange and
// production, contact temperature, partial entropies, and the entropy-exchange
// inequality chain for a set of heat-exchanging parts.

#include <span>
#include <vector>

#include "qthermo/ensemble.hpp"

namespace qthermo {

namespace tol {
inline constexpr double identity = 1e-10;
inline constexpr double temperature_denominator = 1e-14;
}  // namespace tol

/// E = Tr(H rho).
double energy(const HermitianOperator& h, const HermitianOperator& rho);

/// Q° = Tr(H rho°).
double heat_rate(const HermitianOperator& h, const HermitianOperator& propagator);

struct PowerRate {
  RealVector forces;  ///< K_i = Tr(dH/da_i rho)
  double value = 0;   ///< K . a_dot
};

PowerRate power_rate(std::span<const HermitianOperator> generators, const HermitianOperator& rho,
                     const RealVector& a_dot);

/// S = -k_B Tr(rho ln rho).
double shannon_entropy(const HermitianOperator& rho, const Units& units = {});

/// S° = -dp . f^I.
double entropy_rate(const Ensemble& ens, const RealVector& dp, double Z = 1.0,
                    const Units& units = {});

/// S° = -k_B Tr(rho° ln(Z rho)), the operator-side counterpart of entropy_rate.
double entropy_rate_operator(const HermitianOperator& rho, const HermitianOperator& propagator,
                             double Z = 1.0, const Units& units = {});

/// Xi = dp_ex . f^II = Tr(H rho°_ex) / theta.
double entropy_exchange(const Frame& frame, const RealVector& dp_ex, const HermitianOperator& h,
                        double theta);

struct EntropyProduction {
  double value = 0;           ///< -(dp_ex + dp_iso) . f
  double isolated_route = 0;  ///< -dp_iso . f^I
  double exchange_constraint = 0;  ///< dp_ex . f
  double isolated_constraint = 0;  ///< dp_iso . f^II
  bool split_admissible = false;   ///< both constraints vanish within tol::identity
  bool consistent = true;  ///< routes agree (only asserted when split_admissible)
};

EntropyProduction entropy_production(const Ensemble& ens, const RateSplit& rates,
                                     const HermitianOperator& h, double theta, double Z = 1.0,
                                     const Units& units = {});

enum class TemperatureStatus {
  defined,
  zero_heat_exchange,     ///< |Tr(H rho°_ex)| below threshold
  zero_entropy_exchange,  ///< |k_B Tr(rho°_ex ln(Z rho))| below threshold
};

struct ContactTemperature {
  TemperatureStatus status = TemperatureStatus::defined;
  double value = 0;

  bool defined() const { return status == TemperatureStatus::defined; }
};

/// theta = Tr(H rho°_ex) / (-k_B Tr(rho°_ex ln(Z rho))). Independent of Z.
ContactTemperature contact_temperature_qm(const Ensemble& ens, const RealVector& dp_ex,
                                          const HermitianOperator& h, double Z = 1.0,
                                          const Units& units = {});

/// 1/theta of the state: the exchange-direction form of contact_temperature_qm
/// with dp_ex along the zero-mean level energies. Equals 1/theta_eq exactly on
/// canonical states and zero on micro-canonical ones. Empty when all level
/// energies in the frame coincide.
std::optional<double> inverse_contact_temperature(const Ensemble& ens, const HermitianOperator& h,
                                                  const Units& units = {});

/// The same fit on vectors: -(P0 levels . f1) / |P0 levels|^2.
std::optional<double> fitted_inverse_temperature(const RealVector& f1, const RealVector& levels);

struct PartialEntropies {
  double S = 0;
  double S1 = 0;
  double S2 = 0;
  double deficiency = 0;  ///< S1 + S2 - S
  double trace_identity_residual = 0;  ///< max_A |S_A + k_B Tr(rho ln rho^A)|
};

PartialEntropies partial_entropies(const HermitianOperator& rho_com, const Units& units = {});

struct HeatPart {
  double heat = 0;
  double temperature = 1;
};

enum class ChainLink { none, parts_vs_compound, compound_vs_reservoir };

/// sum_j Q^j/theta^j >= Q/theta >= Q/T_box, with Q = sum_j Q^j.
///
/// theta_plus / theta_minus are exchange-weighted harmonic means of the parts'
/// temperatures over the positive / negative heat parts. The first link is
/// asserted only when theta lies in [theta_plus, theta_minus].
struct ExchangeChainReport {
  double parts_sum = 0;
  double compound = 0;
  double reservoir = 0;
  double theta_plus = 0;
  double theta_minus = 0;
  bool theta_consistent = false;
  bool parts_link_holds = true;
  bool reservoir_link_holds = true;
  ChainLink violated = ChainLink::none;

  bool violation() const { return violated != ChainLink::none; }
};

ExchangeChainReport entropy_exchange_inequality(std::span<const HeatPart> parts, double theta,
                                                double t_box);

}  // namespace qthermo
