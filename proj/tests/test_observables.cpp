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
#include <vector>

#include "qthermo/bipartite.hpp"
#include "qthermo/constitutive.hpp"
#include "qthermo/observables.hpp"
#include "qthermo/random.hpp"

using namespace qthermo;

namespace {

const HermitianOperator& two_level() {
  static const HermitianOperator h = HermitianOperator::diagonal(RealVector{{0.0, 1.0}});
  return h;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("energy") {
  Rng rng(1);
  const HermitianOperator rho = random_density(rng, {3, 1}).with_factor_dims({3, 1});
  CHECK(energy(HermitianOperator::identity(3), rho) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(energy(two_level(), HermitianOperator::diagonal(RealVector{{0.25, 0.75}})) == 0.75);

  const HermitianOperator h = random_hermitian(rng, 3);
  const ComplexMatrix u = random_unitary(rng, 3);
  const HermitianOperator h2(ComplexMatrix(u * h.matrix() * u.adjoint()));
  const HermitianOperator rho2(ComplexMatrix(u * rho.matrix() * u.adjoint()));
  CHECK(energy(h2, rho2) == doctest::Approx(energy(h, rho)).epsilon(1e-12));
}

TEST_CASE("heat_rate") {
  const Frame frame = Frame::eigenframe(two_level());
  CHECK(heat_rate(two_level(), propagator_of(frame, RealVector::Zero(2))) == 0.0);
  const double delta = 0.2;
  const HermitianOperator r = propagator_of(frame, RealVector{{-delta, delta}});
  CHECK(heat_rate(two_level(), r) == doctest::Approx(delta));
  const HermitianOperator shifted = two_level() + HermitianOperator::identity(2) * 3.0;
  CHECK(heat_rate(shifted, r) == doctest::Approx(delta).epsilon(1e-14));
}

TEST_CASE("power_rate") {
  Rng rng(2);
  const HermitianOperator rho = random_density(rng, {3, 1}).with_factor_dims({3, 1});
  {
    const std::vector<HermitianOperator> gens{HermitianOperator::identity(3)};
    CHECK(power_rate(gens, rho, RealVector::Zero(1)).value == 0.0);
    const PowerRate p = power_rate(gens, rho, RealVector{{0.7}});
    CHECK(p.forces(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.value == doctest::Approx(0.7).epsilon(1e-14));
  }
  // Finite differences of E(a) = Tr((H0 + a.G) rho) at fixed rho.
  const HermitianOperator h0 = random_hermitian(rng, 3);
  const std::vector<HermitianOperator> gens{random_hermitian(rng, 3), random_hermitian(rng, 3)};
  const RealVector a{{0.3, -0.4}};
  const auto e_at = [&](const RealVector& x) {
    HermitianOperator h = h0;
    for (Index i = 0; i < x.size(); ++i) h += gens[std::size_t(i)] * x(i);
    return energy(h, rho);
  };
  const PowerRate p = power_rate(gens, rho, RealVector{{1.0, 0.0}});
  const double step = 1e-5;
  for (Index i = 0; i < 2; ++i) {
    RealVector up = a, down = a;
    up(i) += step;
    down(i) -= step;
    CHECK(std::abs((e_at(up) - e_at(down)) / (2 * step) - p.forces(i)) < 1e-8);
  }
}

TEST_CASE("shannon_entropy") {
  CHECK(shannon_entropy(HermitianOperator::diagonal(RealVector{{0.0, 1.0}})) == 0.0);
  CHECK(shannon_entropy(HermitianOperator::identity(2) * 0.5) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const double max5 = shannon_entropy(HermitianOperator::identity(5) * 0.2);
  CHECK(max5 == doctest::Approx(std::log(5.0)).epsilon(1e-15));
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    CHECK(shannon_entropy(density_of(random_ensemble(rng, 5))) <= max5 + 1e-12);
  }
  const Units units{1.0, 2.0};
  CHECK(shannon_entropy(HermitianOperator::identity(2) * 0.5, units) ==
        doctest::Approx(2 * std::log(2.0)));
}

TEST_CASE("entropy_rate") {
  Rng rng(4);
  const Ensemble half(Frame::standard(2), WeightVector::uniform(2));
  CHECK(entropy_rate(half, RealVector::Zero(2)) == 0.0);
  CHECK(entropy_rate(half, RealVector{{0.1, -0.1}}) == 0.0);
  for (int k = 0; k < 50; ++k) {
    const Ensemble ens = random_ensemble(rng, 4);
    const RealVector dp = random_zero_sum(rng, 4);
    const double s1 = entropy_rate(ens, dp, 1.0);
    CHECK(entropy_rate(ens, dp, 7.0) == s1);
    CHECK(rel(entropy_rate_operator(density_of(ens), propagator_of(ens.frame, dp)), s1) < 1e-10);
  }
}

TEST_CASE("entropy_exchange") {
  Rng rng(5);
  const HermitianOperator h = random_hermitian(rng, 4);
  const Ensemble ens = random_ensemble(rng, 4);
  CHECK(entropy_exchange(ens.frame, RealVector::Zero(4), h, 1.5) == 0.0);
  for (int k = 0; k < 20; ++k) {
    const RealVector dp = random_zero_sum(rng, 4);
    const double xi = entropy_exchange(ens.frame, dp, h, 1.5);
    CHECK(entropy_exchange(ens.frame, dp, h, 3.0) == doctest::Approx(xi / 2).epsilon(1e-14));
    CHECK(std::abs(xi * 1.5 - heat_rate(h, propagator_of(ens.frame, dp))) < 1e-10);
  }
}

TEST_CASE("entropy_production") {
  Rng rng(6);
  const HermitianOperator h = random_hermitian(rng, 3);
  const Ensemble ens = random_ensemble(rng, 3);
  CHECK(entropy_production(ens, RateSplit::zero(3), h, 1.0).value == 0.0);

  const Ensemble micro = microcanonical(random_frame(rng, 3));
  for (int k = 0; k < 10; ++k) {
    const RateSplit rates(RealVector::Zero(3), random_zero_sum(rng, 3));
    CHECK(std::abs(entropy_production(micro, rates, h, 1.0, 3.0).isolated_route) < 1e-14);
  }

  const ConstitutiveModel model;
  for (int k = 0; k < 50; ++k) {
    const Ensemble e = random_ensemble(rng, 4);
    const HermitianOperator hk = random_hermitian(rng, 4);
    const RealVector dp = iso_rates(e, hk, 1.2, 1.0, model.alpha);
    const RateSplit rates(RealVector::Zero(4), dp);
    CHECK(entropy_production(e, rates, hk, 1.2).isolated_route >= -1e-12);
  }
}

TEST_CASE("contact_temperature_qm") {
  Rng rng(7);
  const HermitianOperator h = random_hermitian(rng, 4);
  const double theta0 = 0.8;
  const CanonicalState can = canonical(h, theta0);
  for (int k = 0; k < 10; ++k) {
    const ContactTemperature t =
        contact_temperature_qm(can.ensemble, random_zero_sum(rng, 4), h, can.Z);
    REQUIRE(t.defined());
    CHECK(t.value == doctest::Approx(theta0).epsilon(1e-10));
  }
  CHECK_FALSE(contact_temperature_qm(can.ensemble, RealVector::Zero(4), h).defined());

  for (int k = 0; k < 20; ++k) {
    const Ensemble ens = random_ensemble(rng, 4);
    const RealVector dp = random_zero_sum(rng, 4);
    const ContactTemperature a = contact_temperature_qm(ens, dp, h, 1.0);
    const ContactTemperature b = contact_temperature_qm(ens, dp, h, 1e3);
    CHECK(a.status == b.status);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("partial_entropies") {
  Rng rng(8);
  const HermitianOperator r1(random_density(rng, {2, 1}).matrix());
  const HermitianOperator r2(random_density(rng, {3, 1}).matrix());
  CHECK(std::abs(partial_entropies(tensor_product(r1, r2)).deficiency) < 1e-12);

  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  const PartialEntropies bell =
      partial_entropies(HermitianOperator(psi * psi.adjoint(), FactorDims{2, 2}));
  CHECK(std::abs(bell.S) < 1e-12);
  CHECK(bell.S1 == doctest::Approx(std::log(2.0)));
  CHECK(bell.S2 == doctest::Approx(std::log(2.0)));
  CHECK(bell.deficiency == doctest::Approx(2 * std::log(2.0)));

  for (int k = 0; k < 100; ++k) {
    const PartialEntropies p = partial_entropies(random_density(rng, {2, 3}));
    CHECK(p.deficiency >= -1e-10);
    CHECK(p.trace_identity_residual < 1e-10);
  }
}

TEST_CASE("entropy_exchange_inequality") {
  SUBCASE("single part at the compound temperature") {
    const HeatPart parts[] = {{0.4, 1.5}};
    const ExchangeChainReport r = entropy_exchange_inequality(parts, 1.5, 2.0);
    CHECK(r.parts_sum == doctest::Approx(r.compound));
    CHECK_FALSE(r.violation());
  }
  SUBCASE("hand example") {
    const HeatPart parts[] = {{2.0, 1.0}, {-1.0, 4.0}};
    const ExchangeChainReport r = entropy_exchange_inequality(parts, 1.5, 2.0);
    CHECK(r.parts_sum == doctest::Approx(1.75));
    CHECK(r.compound == doctest::Approx(1.0 / 1.5));
    CHECK(r.reservoir == doctest::Approx(0.5));
    CHECK_FALSE(r.violation());
  }
  SUBCASE("no heat") {
    const HeatPart parts[] = {{0.0, 1.0}, {0.0, 2.0}};
    const ExchangeChainReport r = entropy_exchange_inequality(parts, 1.5, 2.0);
    CHECK(r.parts_sum == 0.0);
    CHECK(r.compound == 0.0);
    CHECK(r.reservoir == 0.0);
  }
  SUBCASE("reservoir link violated") {
    const HeatPart parts[] = {{1.0, 3.0}};
    const ExchangeChainReport r = entropy_exchange_inequality(parts, 3.0, 2.0);
    CHECK(r.violated == ChainLink::compound_vs_reservoir);
  }
}
