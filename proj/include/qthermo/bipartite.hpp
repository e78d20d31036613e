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

// Bipartite (compound / decomposed) systems: H = H^1 + H^2 + H^12 with affine
// work-variable dependence, one joint density operator on the product space,
// and the internal/external split of power, heat and entropy exchange.

#include <array>
#include <vector>

#include "qthermo/observables.hpp"

namespace qthermo {

enum class Part { one = 0, two = 1, interaction = 2 };

inline constexpr std::array<Part, 3> all_parts{Part::one, Part::two, Part::interaction};

template <typename T>
using PerPart = std::array<T, 3>;

inline constexpr std::size_t index_of(Part p) { return static_cast<std::size_t>(p); }

/// H^A(a) = base + sum_i a^A_i own_i + sum_i a^12_i coupling_i.
///
/// `own` holds dH^A/da^A (always empty for the interaction part), `coupling`
/// holds dH^A/da^12.
struct PartHamiltonian {
  HermitianOperator base;
  std::vector<HermitianOperator> own;
  std::vector<HermitianOperator> coupling;
};

struct WorkState {
  RealVector a1, a2, a12;
  RealVector a1_dot, a2_dot, a12_dot;

  static WorkState zero(Index n1, Index n2, Index n12);
  const RealVector& own_values(Part p) const;
  const RealVector& own_rates(Part p) const;
};

/// Decomposed Hamiltonian. Parts one and two are supplied on their own factor
/// and stored embedded as H^1 (x) I and I (x) H^2; the interaction part acts
/// on the product space. Empty coupling lists stand for zero generators.
class CompoundHamiltonian {
 public:
  CompoundHamiltonian(FactorDims dims, PartHamiltonian first, PartHamiltonian second,
                      PartHamiltonian interaction);

  FactorDims dims() const { return dims_; }
  /// Embedded on the product space, coupling lists padded with zeros.
  const PartHamiltonian& part(Part p) const { return parts_[index_of(p)]; }
  /// As supplied to the constructor.
  const PartHamiltonian& local(Part p) const { return local_[index_of(p)]; }

  Index own_count(Part p) const { return Index(part(p).own.size()); }
  Index coupling_count() const { return n_coupling_; }

  HermitianOperator at(Part p, const WorkState& w) const;
  HermitianOperator total(const WorkState& w) const;
  /// dH/da^12_i = sum_A dH^A/da^12_i.
  HermitianOperator total_coupling_generator(Index i) const;

  /// Checks that a work state matches the generator counts.
  void check(const WorkState& w) const;

 private:
  FactorDims dims_;
  PerPart<PartHamiltonian> local_;
  PerPart<PartHamiltonian> parts_;
  Index n_coupling_ = 0;
};

/// Theta^1, Theta^2, Theta^12 are scenario inputs; T_box is the environment.
struct TemperatureSet {
  double theta1 = 1;
  double theta2 = 1;
  double theta12 = 1;
  double t_box = 1;

  double part(Part p) const;
  void validate() const;
};

/// Immutable snapshot of a bipartite system.
class BipartiteSystem {
 public:
  BipartiteSystem(CompoundHamiltonian h, Ensemble state, RateSplit rates, WorkState work,
                  TemperatureSet temps, bool isolated, Units units = {});

  const CompoundHamiltonian& hamiltonian() const { return h_; }
  const Ensemble& state() const { return state_; }
  const RateSplit& rates() const { return rates_; }
  const WorkState& work() const { return work_; }
  const TemperatureSet& temps() const { return temps_; }
  bool isolated() const { return isolated_; }
  const Units& units() const { return units_; }
  FactorDims dims() const { return h_.dims(); }

  HermitianOperator total_hamiltonian() const { return h_.total(work_); }
  HermitianOperator part_hamiltonian(Part p) const { return h_.at(p, work_); }
  HermitianOperator density() const;
  HermitianOperator propagator() const;
  HermitianOperator exchange_propagator() const;
  HermitianOperator isolated_propagator() const;

  BipartiteSystem with_state(Ensemble s) const;
  BipartiteSystem with_rates(RateSplit r) const;
  BipartiteSystem with_work(WorkState w) const;
  BipartiteSystem with_temperatures(TemperatureSet t) const;
  /// Rate substitution dp -> dp_iso on isolation; Hamiltonian and ensemble untouched.
  BipartiteSystem with_isolated(bool isolated) const;

 private:
  CompoundHamiltonian h_;
  Ensemble state_;
  RateSplit rates_;
  WorkState work_;
  TemperatureSet temps_;
  bool isolated_;
  Units units_;
};

/// rho_dot = -(i/hbar)[H, rho] + rho°_ex + rho°_iso.
HermitianOperator compound_rhs(const BipartiteSystem& sys);

/// Norm of Tr^B(rho_dot) - (-(i/hbar)[H^A, rho^A] - (i/hbar)Tr^B[H^12, rho] + rho°^A).
double subsystem_eom_residual(const BipartiteSystem& sys, Part which);

struct PowerExchange {
  PerPart<double> external{};  ///< interaction entry is always zero
  PerPart<double> internal{};
  double external_total = 0;
  double internal_total = 0;     ///< sum of the internal parts
  double coupling_power_direct = 0; ///< Tr(dH/da^12 rho) . a12_dot, direct route
  double total() const { return external_total + internal_total; }
};

PowerExchange partial_power(const BipartiteSystem& sys);

struct HeatExchange {
  PerPart<double> external{};
  PerPart<double> internal{};
  PerPart<double> total{};  ///< Tr(H^A rho_dot)
  double compound = 0;       ///< Tr(H rho_dot)
  double compound_external = 0;  ///< Tr(H rho°_ex)
  double additivity_residual = 0;
  double internal_sum = 0;
};

HeatExchange partial_heat(const BipartiteSystem& sys);

struct EntropyExchangeParts {
  PerPart<double> external{};
  PerPart<double> internal{};
  double compound_external = 0;  ///< Q_ex / Theta of the compound system
  double external_gap = 0;       ///< sum_A Xi^A_ex - Xi_ex
  double internal_sum = 0;
  double continuity_residual = 0;  ///< Q12_int/Theta2 - Q1_int (1/Theta1 - 1/Theta2)
};

/// Xi^A = Q^A / Theta^A. The compound Theta is the state's contact temperature.
EntropyExchangeParts partial_entropy_exchange(const BipartiteSystem& sys);
EntropyExchangeParts partial_entropy_exchange(const BipartiteSystem& sys, const HeatExchange& heat);

/// 1/Theta of the compound state (0 when undefined).
double compound_inverse_temperature(const BipartiteSystem& sys);

struct EntropyRateDeficiency {
  double s1_dot = 0;
  double s2_dot = 0;
  double s_dot = 0;
  double by_definition = 0;   ///< S1_dot + S2_dot - S_dot
  double explicit_form = 0;   ///< closed form in [H^12, rho] and rho°
};

EntropyRateDeficiency entropy_rate_deficiency(const BipartiteSystem& sys);

/// Uniform weights on `frame` (standard basis when omitted). Z = N.
Ensemble microcanonical(Index n);
Ensemble microcanonical(const Frame& frame);

struct CanonicalState {
  Ensemble ensemble;
  double Z;
};

CanonicalState canonical(const HermitianOperator& h, double theta, const Units& units = {});

namespace tol {
inline constexpr double equilibrium_operator = 1e-10;
inline constexpr double equilibrium_temperature = 1e-8;
}  // namespace tol

struct EquilibriumReport {
  bool stationary = false;          ///< rho_dot = 0
  bool no_exchange_propagator = false;
  bool no_isolated_propagator = false;
  bool no_work_rates = false;
  bool equal_temperatures = false;
  bool exchanges_vanish = false;
  bool entropy_rate_vanishes = false;
  bool production_vanishes = false;
  double rho_dot_norm = 0;

  bool all() const {
    return stationary && no_exchange_propagator && no_isolated_propagator && no_work_rates &&
           equal_temperatures && exchanges_vanish && entropy_rate_vanishes && production_vanishes;
  }
};

EquilibriumReport equilibrium_check(const BipartiteSystem& sys);

/// System (factor one) coupled to a heat reservoir (factor two) through
/// `interaction`. Externally isolated; the reservoir starts canonical at T_box.
/// `system_state` defaults to micro-canonical weights on the eigenframe of
/// `system_h`.
BipartiteSystem reservoir_config(const HermitianOperator& system_h,
                                 const HermitianOperator& reservoir_h,
                                 const HermitianOperator& interaction, double t_box,
                                 std::optional<Ensemble> system_state = std::nullopt,
                                 const Units& units = {});

struct ReservoirDiagnostics {
  double reservoir_commutator = 0;  ///< |[H_box, rho_box]|
  double traced_interaction = 0;    ///< |Tr_system [H_ia, rho]|
  double system_balance = 0;        ///< |[H, Tr_box rho] + Tr_box [H_ia, rho]|
  double total_trace = 0;           ///< |Tr [H_ia, rho]|
};

ReservoirDiagnostics reservoir_diagnostics(const BipartiteSystem& sys);

/// Largest entry magnitude.
double max_abs(const ComplexMatrix& m);

}  // namespace qthermo
