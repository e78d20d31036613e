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

#include "qthermo/bipartite.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qthermo {

namespace {

const std::complex<double> I_unit(0.0, 1.0);

double real_trace(const ComplexMatrix& a, const ComplexMatrix& b) {
  return trace_product(a, b).real();
}

// -(i/hbar)[H, rho] as a Hermitian operator.
HermitianOperator unitary_part(const HermitianOperator& h, const HermitianOperator& rho,
                               const Units& units) {
  ComplexMatrix c = (-I_unit / units.hbar) * commutator(h, rho);
  return HermitianOperator(std::move(c), rho.factor_dims());
}

HermitianOperator embed(Part p, const HermitianOperator& local, FactorDims dims) {
  switch (p) {
    case Part::one:
      if (local.dim() != dims.first) throw DimensionError("part one: dimension mismatch");
      return embed_first(local, dims.second);
    case Part::two:
      if (local.dim() != dims.second) throw DimensionError("part two: dimension mismatch");
      return embed_second(dims.first, local);
    case Part::interaction:
      if (local.dim() != dims.total()) throw DimensionError("interaction: dimension mismatch");
      return local.with_factor_dims(dims);
  }
  throw Error("unknown part");
}

PartHamiltonian embed_part(Part p, const PartHamiltonian& in, FactorDims dims) {
  PartHamiltonian out{embed(p, in.base, dims), {}, {}};
  for (const auto& g : in.own) out.own.push_back(embed(p, g, dims));
  for (const auto& g : in.coupling) out.coupling.push_back(embed(p, g, dims));
  return out;
}

void check_length(const RealVector& v, Index n, const char* what) {
  if (v.size() != n) {
    throw DimensionError(std::string("work state: ") + what + " has " + std::to_string(v.size()) +
                         " entries, expected " + std::to_string(n));
  }
}

}  // namespace

double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

WorkState WorkState::zero(Index n1, Index n2, Index n12) {
  return {RealVector::Zero(n1),  RealVector::Zero(n2),  RealVector::Zero(n12),
          RealVector::Zero(n1),  RealVector::Zero(n2),  RealVector::Zero(n12)};
}

const RealVector& WorkState::own_values(Part p) const {
  static const RealVector empty;
  return p == Part::one ? a1 : p == Part::two ? a2 : empty;
}

const RealVector& WorkState::own_rates(Part p) const {
  static const RealVector empty;
  return p == Part::one ? a1_dot : p == Part::two ? a2_dot : empty;
}

CompoundHamiltonian::CompoundHamiltonian(FactorDims dims, PartHamiltonian first,
                                         PartHamiltonian second, PartHamiltonian interaction)
    : dims_(dims) {
  if (dims.first < 1 || dims.second < 1) throw DimensionError("factor dimensions must be positive");
  if (dims.total() > max_dimension()) {
    throw DimensionError("compound dimension " + std::to_string(dims.total()) +
                         " exceeds the configured limit " + std::to_string(max_dimension()));
  }
  if (!interaction.own.empty()) {
    throw StructureError("the interaction part has no work variables of its own");
  }
  local_ = {first, second, interaction};
  parts_ = {embed_part(Part::one, first, dims), embed_part(Part::two, second, dims),
            embed_part(Part::interaction, interaction, dims)};
  for (const auto& p : parts_) n_coupling_ = std::max<Index>(n_coupling_, Index(p.coupling.size()));
  for (auto& p : parts_) {
    if (p.coupling.empty()) {
      p.coupling.assign(std::size_t(n_coupling_), HermitianOperator::zero(dims.total(), dims));
    } else if (Index(p.coupling.size()) != n_coupling_) {
      throw DimensionError("coupling generator lists differ in length");
    }
  }
}

void CompoundHamiltonian::check(const WorkState& w) const {
  check_length(w.a1, own_count(Part::one), "a1");
  check_length(w.a1_dot, own_count(Part::one), "a1_dot");
  check_length(w.a2, own_count(Part::two), "a2");
  check_length(w.a2_dot, own_count(Part::two), "a2_dot");
  check_length(w.a12, n_coupling_, "a12");
  check_length(w.a12_dot, n_coupling_, "a12_dot");
}

HermitianOperator CompoundHamiltonian::at(Part p, const WorkState& w) const {
  const PartHamiltonian& part = parts_[index_of(p)];
  HermitianOperator h = part.base;
  const RealVector& a = w.own_values(p);
  for (std::size_t i = 0; i < part.own.size(); ++i) h += a(Index(i)) * part.own[i];
  for (std::size_t i = 0; i < part.coupling.size(); ++i) h += w.a12(Index(i)) * part.coupling[i];
  return h;
}

HermitianOperator CompoundHamiltonian::total(const WorkState& w) const {
  check(w);
  return at(Part::one, w) + at(Part::two, w) + at(Part::interaction, w);
}

HermitianOperator CompoundHamiltonian::total_coupling_generator(Index i) const {
  return parts_[0].coupling.at(std::size_t(i)) + parts_[1].coupling.at(std::size_t(i)) +
         parts_[2].coupling.at(std::size_t(i));
}

double TemperatureSet::part(Part p) const {
  return p == Part::one ? theta1 : p == Part::two ? theta2 : theta12;
}

void TemperatureSet::validate() const {
  for (double t : {theta1, theta2, theta12, t_box}) {
    if (!(t > 0.0)) {
      throw InvalidTemperatureError("temperatures must be positive, got " + std::to_string(t));
    }
  }
}

BipartiteSystem::BipartiteSystem(CompoundHamiltonian h, Ensemble state, RateSplit rates,
                                 WorkState work, TemperatureSet temps, bool isolated, Units units)
    : h_(std::move(h)),
      state_(std::move(state)),
      rates_(std::move(rates)),
      work_(std::move(work)),
      temps_(temps),
      isolated_(isolated),
      units_(units) {
  const Index n = h_.dims().total();
  if (state_.dim() != n) {
    throw DimensionError("ensemble dimension " + std::to_string(state_.dim()) +
                         " does not match the compound dimension " + std::to_string(n));
  }
  if (rates_.size() != n) throw DimensionError("rate vector length does not match the dimension");
  if (state_.frame.factor_dims() && !(*state_.frame.factor_dims() == h_.dims())) {
    throw DimensionError("frame factor dimensions differ from the Hamiltonian's");
  }
  h_.check(work_);
  temps_.validate();
  if (!(units_.hbar > 0.0) || !(units_.k_B > 0.0)) throw Error("hbar and k_B must be positive");
  if (isolated_ && rates_.exchange().cwiseAbs().maxCoeff() > 0.0) {
    throw InvalidRateError("an isolated system cannot carry exchange rates");
  }
}

HermitianOperator BipartiteSystem::density() const {
  return density_of(state_).with_factor_dims(h_.dims());
}

HermitianOperator BipartiteSystem::propagator() const {
  return propagator_of(state_.frame, rates_.total()).with_factor_dims(h_.dims());
}

HermitianOperator BipartiteSystem::exchange_propagator() const {
  return propagator_of(state_.frame, rates_.exchange()).with_factor_dims(h_.dims());
}

HermitianOperator BipartiteSystem::isolated_propagator() const {
  return propagator_of(state_.frame, rates_.isolated()).with_factor_dims(h_.dims());
}

BipartiteSystem BipartiteSystem::with_state(Ensemble s) const {
  return BipartiteSystem(h_, std::move(s), rates_, work_, temps_, isolated_, units_);
}

BipartiteSystem BipartiteSystem::with_rates(RateSplit r) const {
  return BipartiteSystem(h_, state_, std::move(r), work_, temps_, isolated_, units_);
}

BipartiteSystem BipartiteSystem::with_work(WorkState w) const {
  return BipartiteSystem(h_, state_, rates_, std::move(w), temps_, isolated_, units_);
}

BipartiteSystem BipartiteSystem::with_temperatures(TemperatureSet t) const {
  return BipartiteSystem(h_, state_, rates_, work_, t, isolated_, units_);
}

BipartiteSystem BipartiteSystem::with_isolated(bool isolated) const {
  RateSplit r = isolated ? rates_.isolated_only() : rates_;
  return BipartiteSystem(h_, state_, std::move(r), work_, temps_, isolated, units_);
}

HermitianOperator compound_rhs(const BipartiteSystem& sys) {
  return unitary_part(sys.total_hamiltonian(), sys.density(), sys.units()) + sys.propagator();
}

double subsystem_eom_residual(const BipartiteSystem& sys, Part which) {
  if (which == Part::interaction) throw StructureError("the interaction part has no factor");
  const FactorDims dims = sys.dims();
  const TracedFactor traced = which == Part::one ? TracedFactor::second : TracedFactor::first;
  const Index other = which == Part::one ? dims.second : dims.first;
  const HermitianOperator rho = sys.density();

  const HermitianOperator lhs = partial_trace(compound_rhs(sys), traced);
  // H^A is stored as H^A_local (x) I (or I (x) H^A_local).
  const HermitianOperator local = partial_trace(sys.part_hamiltonian(which), traced) * (1.0 / other);
  const HermitianOperator rho_a = partial_trace(rho, traced);
  const ComplexMatrix coupling =
      partial_trace(commutator(sys.part_hamiltonian(Part::interaction), rho), dims, traced);
  const ComplexMatrix rhs = (-I_unit / sys.units().hbar) * commutator(local, rho_a) -
                            (I_unit / sys.units().hbar) * coupling +
                            partial_trace(sys.propagator(), traced).matrix();
  return max_abs(lhs.matrix() - rhs);
}

PowerExchange partial_power(const BipartiteSystem& sys) {
  const CompoundHamiltonian& h = sys.hamiltonian();
  const WorkState& w = sys.work();
  const HermitianOperator rho = sys.density();
  PowerExchange out;
  for (Part p : all_parts) {
    const PartHamiltonian& part = h.part(p);
    if (!part.own.empty()) {
      out.external[index_of(p)] = power_rate(part.own, rho, w.own_rates(p)).value;
    }
    out.internal[index_of(p)] = power_rate(part.coupling, rho, w.a12_dot).value;
    out.external_total += out.external[index_of(p)];
    out.internal_total += out.internal[index_of(p)];
  }
  for (Index i = 0; i < h.coupling_count(); ++i) {
    out.coupling_power_direct += energy(h.total_coupling_generator(i), rho) * w.a12_dot(i);
  }
  return out;
}

HeatExchange partial_heat(const BipartiteSystem& sys) {
  const HermitianOperator h = sys.total_hamiltonian();
  const HermitianOperator rho = sys.density();
  const HermitianOperator unitary = unitary_part(h, rho, sys.units());
  const HermitianOperator ex = sys.exchange_propagator();
  const HermitianOperator iso = sys.isolated_propagator();
  HeatExchange out;
  double sum = 0;
  for (Part p : all_parts) {
    const std::size_t k = index_of(p);
    const HermitianOperator hp = sys.part_hamiltonian(p);
    out.internal[k] = real_trace(hp.matrix(), unitary.matrix()) + heat_rate(hp, iso);
    out.external[k] = heat_rate(hp, ex);
    out.total[k] = out.internal[k] + out.external[k];
    out.internal_sum += out.internal[k];
    sum += out.total[k];
  }
  out.compound = real_trace(h.matrix(), (unitary + ex + iso).matrix());
  out.compound_external = heat_rate(h, ex);
  out.additivity_residual = sum - out.compound;
  return out;
}

double compound_inverse_temperature(const BipartiteSystem& sys) {
  return inverse_contact_temperature(sys.state(), sys.total_hamiltonian(), sys.units())
      .value_or(0.0);
}

EntropyExchangeParts partial_entropy_exchange(const BipartiteSystem& sys) {
  return partial_entropy_exchange(sys, partial_heat(sys));
}

EntropyExchangeParts partial_entropy_exchange(const BipartiteSystem& sys,
                                              const HeatExchange& heat) {
  const TemperatureSet& t = sys.temps();
  EntropyExchangeParts out;
  double ex_sum = 0;
  for (Part p : all_parts) {
    const std::size_t k = index_of(p);
    out.external[k] = heat.external[k] / t.part(p);
    out.internal[k] = heat.internal[k] / t.part(p);
    ex_sum += out.external[k];
    out.internal_sum += out.internal[k];
  }
  out.compound_external = compound_inverse_temperature(sys) * heat.compound_external;
  out.external_gap = ex_sum - out.compound_external;
  out.continuity_residual =
      heat.internal[2] / t.theta2 - heat.internal[0] * (1.0 / t.theta1 - 1.0 / t.theta2);
  return out;
}

EntropyRateDeficiency entropy_rate_deficiency(const BipartiteSystem& sys) {
  const FactorDims dims = sys.dims();
  const double kB = sys.units().k_B;
  const HermitianOperator rho = sys.density();
  const HermitianOperator rho_dot = compound_rhs(sys);
  const HermitianOperator prop = sys.propagator();
  const HermitianOperator log1 =
      embed_first(operator_log(partial_trace(rho, TracedFactor::second)), dims.second);
  const HermitianOperator log2 =
      embed_second(dims.first, operator_log(partial_trace(rho, TracedFactor::first)));
  const HermitianOperator log_rho = operator_log(rho);

  EntropyRateDeficiency out;
  out.s1_dot = -kB * real_trace(rho_dot.matrix(), log1.matrix());
  out.s2_dot = -kB * real_trace(rho_dot.matrix(), log2.matrix());
  out.s_dot = -kB * real_trace(prop.matrix(), log_rho.matrix());
  out.by_definition = out.s1_dot + out.s2_dot - out.s_dot;

  const ComplexMatrix log_sum = (log1 + log2).matrix();
  const ComplexMatrix coupling = (-I_unit / sys.units().hbar) *
                                 commutator(sys.part_hamiltonian(Part::interaction), rho);
  out.explicit_form = -kB * (trace_product(coupling, log_sum).real() +
                             real_trace(prop.matrix(), log_sum - log_rho.matrix()));
  return out;
}

Ensemble microcanonical(Index n) { return microcanonical(Frame::standard(n)); }

Ensemble microcanonical(const Frame& frame) {
  return Ensemble(frame, WeightVector::uniform(frame.dim()));
}

CanonicalState canonical(const HermitianOperator& h, double theta, const Units& units) {
  if (!(theta > 0.0) || std::isinf(theta)) {
    throw InvalidTemperatureError("canonical: temperature must be positive and finite");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  const RealVector& e = es.eigenvalues();
  // Shift by the ground energy so the exponentials stay in range.
  RealVector w = (-(e.array() - e.minCoeff()) / (units.k_B * theta)).exp().matrix();
  const double z_shifted = w.sum();
  const double log_z = std::log(z_shifted) - e.minCoeff() / (units.k_B * theta);
  w /= z_shifted;
  return {Ensemble(Frame(es.eigenvectors(), h.factor_dims()), WeightVector(w)), std::exp(log_z)};
}

EquilibriumReport equilibrium_check(const BipartiteSystem& sys) {
  using tol::equilibrium_operator;
  EquilibriumReport out;
  const HermitianOperator rho_dot = compound_rhs(sys);
  out.rho_dot_norm = max_abs(rho_dot.matrix());
  out.stationary = out.rho_dot_norm <= equilibrium_operator;
  out.no_exchange_propagator = sys.rates().exchange().cwiseAbs().maxCoeff() <= equilibrium_operator;
  out.no_isolated_propagator = sys.rates().isolated().cwiseAbs().maxCoeff() <= equilibrium_operator;
  const WorkState& w = sys.work();
  auto small = [](const RealVector& v) {
    return v.size() == 0 || v.cwiseAbs().maxCoeff() <= tol::equilibrium_operator;
  };
  out.no_work_rates = small(w.a1_dot) && small(w.a2_dot) && small(w.a12_dot);

  const TemperatureSet& t = sys.temps();
  const double beta = compound_inverse_temperature(sys);
  const double theta = beta > 0 ? 1.0 / beta : std::numeric_limits<double>::infinity();
  auto same = [&](double a) {
    if (std::isinf(a) || std::isinf(theta)) return std::isinf(a) && std::isinf(theta);
    return std::abs(a - theta) <= tol::equilibrium_temperature * std::max(1.0, theta);
  };
  out.equal_temperatures = same(t.theta1) && same(t.theta2) && same(t.theta12);

  const HeatExchange heat = partial_heat(sys);
  const PowerExchange power = partial_power(sys);
  bool vanish = std::abs(heat.compound) <= equilibrium_operator &&
                std::abs(power.total()) <= equilibrium_operator;
  for (std::size_t k = 0; k < 3; ++k) {
    vanish = vanish && std::abs(heat.external[k]) <= equilibrium_operator &&
             std::abs(heat.internal[k]) <= equilibrium_operator &&
             std::abs(power.external[k]) <= equilibrium_operator &&
             std::abs(power.internal[k]) <= equilibrium_operator;
  }
  out.exchanges_vanish = vanish;

  const RealVector f1 = f1_vector(sys.state(), 1.0, sys.units());
  out.entropy_rate_vanishes = std::abs(sys.rates().total().dot(f1)) <= equilibrium_operator;
  out.production_vanishes = std::abs(sys.rates().isolated().dot(f1)) <= equilibrium_operator;
  return out;
}

BipartiteSystem reservoir_config(const HermitianOperator& system_h,
                                 const HermitianOperator& reservoir_h,
                                 const HermitianOperator& interaction, double t_box,
                                 std::optional<Ensemble> system_state, const Units& units) {
  const FactorDims dims{system_h.dim(), reservoir_h.dim()};
  CompoundHamiltonian h(dims, {system_h, {}, {}}, {reservoir_h, {}, {}}, {interaction, {}, {}});
  const Ensemble sys_state = system_state ? *system_state : microcanonical(Frame::eigenframe(system_h));
  if (sys_state.dim() != dims.first) throw DimensionError("system state dimension mismatch");
  const CanonicalState box = canonical(reservoir_h, t_box, units);

  const Frame frame = product_frame(sys_state.frame, box.ensemble.frame);
  const RealVector& p = sys_state.weights.values();
  const RealVector& q = box.ensemble.weights.values();
  RealVector w(dims.total());
  for (Index k = 0; k < dims.first; ++k)
    for (Index l = 0; l < dims.second; ++l) w(k * dims.second + l) = p(k) * q(l);
  // Products of normalized weights can miss unit sum by a few ulps.
  w /= w.sum();

  TemperatureSet temps{t_box, t_box, t_box, t_box};
  return BipartiteSystem(std::move(h), Ensemble(frame, WeightVector(w)),
                         RateSplit::zero(dims.total()), WorkState::zero(0, 0, 0), temps, true,
                         units);
}

ReservoirDiagnostics reservoir_diagnostics(const BipartiteSystem& sys) {
  const FactorDims dims = sys.dims();
  const HermitianOperator rho = sys.density();
  const HermitianOperator h_ia = sys.part_hamiltonian(Part::interaction);
  const ComplexMatrix c = commutator(h_ia, rho);
  const HermitianOperator h_sys =
      partial_trace(sys.part_hamiltonian(Part::one), TracedFactor::second) * (1.0 / dims.second);
  const HermitianOperator h_box =
      partial_trace(sys.part_hamiltonian(Part::two), TracedFactor::first) * (1.0 / dims.first);
  const HermitianOperator rho_sys = partial_trace(rho, TracedFactor::second);
  const HermitianOperator rho_box = partial_trace(rho, TracedFactor::first);

  ReservoirDiagnostics out;
  out.reservoir_commutator = max_abs(commutator(h_box, rho_box));
  out.traced_interaction = max_abs(partial_trace(c, dims, TracedFactor::first));
  out.system_balance =
      max_abs(commutator(h_sys, rho_sys) + partial_trace(c, dims, TracedFactor::second));
  out.total_trace = std::abs(c.trace());
  return out;
}

}  // namespace qthermo
