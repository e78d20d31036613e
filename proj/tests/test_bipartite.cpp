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

#include <doctest.h>

#include <cmath>

#include "qthermo/bipartite.hpp"
#include "qthermo/random.hpp"

using namespace qthermo;

namespace {

struct Options {
  FactorDims dims{2, 3};
  bool interaction = true;
  double a12_dot = 0.4;
  bool random_rates = true;
  TemperatureSet temps{1.1, 1.7, 1.4, 2.0};
};

// Isolated rates leave the energy unchanged; remove the component along the
// zero-mean level energies.
RealVector energy_neutral(const RealVector& dp, const RealVector& levels) {
  const RealVector g = zero_mean(levels);
  return zero_mean(dp - g * (g.dot(dp) / g.squaredNorm()));
}

CompoundHamiltonian random_hamiltonian(Rng& rng, const Options& o) {
  const FactorDims d = o.dims;
  const Index n = d.total();
  PartHamiltonian h1{random_hermitian(rng, d.first), {random_hermitian(rng, d.first)},
                     {random_hermitian(rng, d.first)}};
  PartHamiltonian h2{random_hermitian(rng, d.second), {random_hermitian(rng, d.second)},
                     {random_hermitian(rng, d.second)}};
  PartHamiltonian h12{o.interaction ? random_hermitian(rng, n, 0.5, d)
                                    : HermitianOperator::zero(n, d),
                      {},
                      {o.interaction ? random_hermitian(rng, n, 0.5, d)
                                     : HermitianOperator::zero(n, d)}};
  return CompoundHamiltonian(d, std::move(h1), std::move(h2), std::move(h12));
}

BipartiteSystem random_system(Rng& rng, const Options& o) {
  const Index n = o.dims.total();
  WorkState w = WorkState::zero(1, 1, 1);
  w.a1(0) = 0.3;
  w.a2(0) = -0.2;
  w.a12(0) = 0.5;
  w.a1_dot(0) = 0.7;
  w.a2_dot(0) = -0.6;
  w.a12_dot(0) = o.a12_dot;
  CompoundHamiltonian h = random_hamiltonian(rng, o);
  Ensemble ens = random_ensemble(rng, n, o.dims);
  RateSplit rates = RateSplit::zero(n);
  if (o.random_rates) {
    const RealVector levels = expectations(ens.frame, h.total(w));
    rates = RateSplit(random_zero_sum(rng, n, 0.1),
                      energy_neutral(random_zero_sum(rng, n, 0.1), levels));
  }
  return BipartiteSystem(std::move(h), std::move(ens), rates, w, o.temps, false);
}

double norm_of(const HermitianOperator& h) { return max_abs(h.matrix()); }

}  // namespace

TEST_CASE("compound_rhs") {
  Rng rng(1);
  SUBCASE("canonical state without rates is stationary") {
    const BipartiteSystem s = random_system(rng, {.random_rates = false});
    const CanonicalState can = canonical(s.total_hamiltonian(), 1.3);
    const BipartiteSystem eq = s.with_state(can.ensemble);
    CHECK(norm_of(compound_rhs(eq)) < 1e-12);
  }
  SUBCASE("zero Hamiltonian leaves only the propagator") {
    const FactorDims d{2, 2};
    const HermitianOperator z1 = HermitianOperator::zero(2);
    const HermitianOperator z12 = HermitianOperator::zero(4, d);
    const CompoundHamiltonian h(d, {z1, {}, {}}, {z1, {}, {}}, {z12, {}, {}});
    const BipartiteSystem s(h, random_ensemble(rng, 4, d),
                            RateSplit(random_zero_sum(rng, 4), random_zero_sum(rng, 4)),
                            WorkState::zero(0, 0, 0), {}, false);
    CHECK(norm_of(compound_rhs(s) - s.propagator()) == 0.0);
  }
  SUBCASE("trace vanishes") {
    for (int k = 0; k < 20; ++k) {
      CHECK(std::abs(compound_rhs(random_system(rng, {})).matrix().trace()) < 1e-12);
    }
  }
}

TEST_CASE("subsystem equation of motion") {
  Rng rng(2);
  SUBCASE("no interaction, product state") {
    Options o{.interaction = false, .random_rates = false};
    const BipartiteSystem s = random_system(rng, o);
    const Ensemble e1 = random_ensemble(rng, 2);
    const Ensemble e2 = random_ensemble(rng, 3);
    RealVector w(6);
    for (Index k = 0; k < 2; ++k)
      for (Index l = 0; l < 3; ++l) w(k * 3 + l) = e1.weights[k] * e2.weights[l];
    w /= w.sum();
    const BipartiteSystem prod =
        s.with_state(Ensemble(product_frame(e1.frame, e2.frame), WeightVector(w)));
    CHECK(subsystem_eom_residual(prod, Part::one) < 1e-14);
    CHECK(subsystem_eom_residual(prod, Part::two) < 1e-14);
  }
  SUBCASE("random systems") {
    for (int k = 0; k < 20; ++k) {
      const BipartiteSystem s = random_system(rng, {});
      CHECK(subsystem_eom_residual(s, Part::one) < 1e-10);
      CHECK(subsystem_eom_residual(s, Part::two) < 1e-10);
      const RateSplit moved(RealVector::Zero(6), s.rates().total());
      CHECK(subsystem_eom_residual(s.with_rates(moved), Part::one) < 1e-10);
    }
  }
}

TEST_CASE("partial_power") {
  Rng rng(3);
  SUBCASE("no coupling rate, no internal power") {
    const PowerExchange p = partial_power(random_system(rng, {.a12_dot = 0.0}));
    for (double v : p.internal) CHECK(v == 0.0);
  }
  SUBCASE("no interaction operator with a coupling rate") {
    const PowerExchange p = partial_power(random_system(rng, {.interaction = false}));
    CHECK(p.internal[2] == 0.0);
    CHECK(std::abs(p.internal[0]) + std::abs(p.internal[1]) > 0.0);
  }
  SUBCASE("equilibrium") {
    BipartiteSystem s = random_system(rng, {.random_rates = false});
    s = s.with_work(WorkState::zero(1, 1, 1));
    const PowerExchange p = partial_power(s);
    for (double v : p.internal) CHECK(v == 0.0);
    for (double v : p.external) CHECK(v == 0.0);
  }
}

TEST_CASE("partial_heat") {
  Rng rng(4);
  {
    // Without the energy-neutral constraint the internal sum is the isolated heat.
    const BipartiteSystem s = random_system(rng, {});
    const RateSplit raw(s.rates().exchange(), random_zero_sum(rng, 6, 0.1));
    const BipartiteSystem t = s.with_rates(raw);
    CHECK(std::abs(partial_heat(t).internal_sum -
                   heat_rate(t.total_hamiltonian(), t.isolated_propagator())) < 1e-12);
  }
  for (int k = 0; k < 20; ++k) {
    const HeatExchange q = partial_heat(random_system(rng, {}));
    CHECK(std::abs(q.internal_sum) < 1e-12);
    CHECK(std::abs(q.additivity_residual) < 1e-12);
  }
  for (int k = 0; k < 20; ++k) {
    const HeatExchange q = partial_heat(random_system(rng, {.interaction = false}));
    CHECK(q.internal[2] == 0.0);
    CHECK(std::abs(q.internal[0] + q.internal[1]) < 1e-12);
  }
  // Diagonal in the eigenframe of H, no isolated rates.
  const BipartiteSystem s = random_system(rng, {});
  const CanonicalState can = canonical(s.total_hamiltonian(), 0.9);
  const BipartiteSystem eq =
      s.with_state(can.ensemble).with_rates(RateSplit(random_zero_sum(rng, 6), RealVector::Zero(6)));
  const HeatExchange q = partial_heat(eq);
  for (double v : q.internal) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("partial_entropy_exchange") {
  Rng rng(5);
  BipartiteSystem s = random_system(rng, {});
  const double beta = compound_inverse_temperature(s);
  REQUIRE(beta > 0);
  const double theta = 1.0 / beta;
  s = s.with_temperatures({theta, theta, theta, 1.0});
  CHECK(std::abs(partial_entropy_exchange(s).external_gap) < 1e-12);
}

TEST_CASE("microcanonical and canonical") {
  const Ensemble m4 = microcanonical(4);
  for (Index k = 0; k < 4; ++k) CHECK(m4.weights[k] == 0.25);
  CHECK(microcanonical(1).weights[0] == 1.0);
  CHECK(f1_vector(m4, 4.0).cwiseAbs().maxCoeff() < 1e-15);

  const CanonicalState flat = canonical(HermitianOperator::zero(3), 2.0);
  for (Index k = 0; k < 3; ++k) CHECK(flat.ensemble.weights[k] == doctest::Approx(1.0 / 3));

  const CanonicalState two = canonical(HermitianOperator::diagonal(RealVector{{0.0, 1.0}}), 1.0);
  const double e = std::exp(-1.0);
  CHECK(two.ensemble.weights[0] == doctest::Approx(1 / (1 + e)).epsilon(1e-14));
  CHECK(two.ensemble.weights[1] == doctest::Approx(e / (1 + e)).epsilon(1e-14));
  CHECK(two.Z == doctest::Approx(1 + e).epsilon(1e-14));

  Rng rng(6);
  const HermitianOperator h = random_hermitian(rng, 5);
  CHECK(max_abs(commutator(h.matrix(), density_of(canonical(h, 0.7).ensemble).matrix())) < 1e-12);
  CHECK_THROWS_AS(canonical(h, -1.0), InvalidTemperatureError);
}

TEST_CASE("equilibrium_check") {
  Rng rng(7);
  BipartiteSystem s = random_system(rng, {.random_rates = false});
  s = s.with_work(WorkState::zero(1, 1, 1));
  const double theta = 1.25;
  const BipartiteSystem eq = s.with_state(canonical(s.total_hamiltonian(), theta).ensemble)
                                 .with_temperatures({theta, theta, theta, theta});
  CHECK(equilibrium_check(eq).all());

  WorkState moving = WorkState::zero(1, 1, 1);
  moving.a12_dot(0) = 0.3;
  const EquilibriumReport r = equilibrium_check(eq.with_work(moving));
  CHECK_FALSE(r.no_work_rates);
  CHECK_FALSE(r.all());

  // Nearly uniform weights on a frame that does not diagonalize H.
  const Ensemble off(random_frame(rng, 6, FactorDims{2, 3}),
                     WeightVector(RealVector{{0.2, 0.15, 0.15, 0.2, 0.1, 0.2}}));
  const EquilibriumReport r2 = equilibrium_check(eq.with_state(off));
  CHECK_FALSE(r2.stationary);
  CHECK(r2.rho_dot_norm > 1e-3);
}

TEST_CASE("reservoir configuration") {
  Rng rng(8);
  const HermitianOperator hs = random_hermitian(rng, 2);
  const HermitianOperator hb = random_hermitian(rng, 3);
  SUBCASE("no interaction") {
    const BipartiteSystem s =
        reservoir_config(hs, hb, HermitianOperator::zero(6, FactorDims{2, 3}), 1.5);
    const ReservoirDiagnostics d = reservoir_diagnostics(s);
    CHECK(d.traced_interaction == 0.0);
    CHECK(d.total_trace == 0.0);
    CHECK(d.reservoir_commutator < 1e-12);
  }
  SUBCASE("random interaction") {
    const BipartiteSystem s =
        reservoir_config(hs, hb, random_hermitian(rng, 6, 0.3, FactorDims{2, 3}), 1.5);
    const ReservoirDiagnostics d = reservoir_diagnostics(s);
    CHECK(d.reservoir_commutator < 1e-12);
    CHECK(std::isfinite(d.system_balance));
    CHECK(s.isolated());
  }
}
