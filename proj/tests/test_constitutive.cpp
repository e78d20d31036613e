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
#include "qthermo/constitutive.hpp"
#include "qthermo/random.hpp"

using namespace qthermo;

TEST_CASE("heat_conduction_law") {
  CHECK(heat_conduction_law(1.0, 1.7, 1.7) == 0.0);
  CHECK(heat_conduction_law(1.0, 1.0, 2.0) == doctest::Approx(0.5));
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const double theta = random_uniform(rng, 0.1, 5);
    const double tb = random_uniform(rng, 0.1, 5);
    const double q = heat_conduction_law(random_uniform(rng, 0.1, 3), theta, tb);
    CHECK((q > 0) == (1 / theta - 1 / tb > 0));
  }
}

TEST_CASE("find_contact_temperature") {
  const RootResult r = find_contact_temperature(
      [](double tb) { return heat_conduction_law(2.0, 1.5, tb); }, 0.5, 4.0);
  CHECK(r.value == doctest::Approx(1.5).epsilon(1e-10));
  CHECK_FALSE(r.zero_everywhere);

  const RootResult z = find_contact_temperature([](double) { return 0.0; }, 1.0, 3.0);
  CHECK(z.zero_everywhere);
  CHECK(z.value == 2.0);

  CHECK_THROWS_AS(find_contact_temperature([](double) { return 1.0; }, 1.0, 3.0),
                  NoSignChangeError);
}

TEST_CASE("isolated rates") {
  Rng rng(2);
  const HermitianOperator h = random_hermitian(rng, 4);
  SUBCASE("micro-canonical weights give no isolated rates") {
    const Ensemble micro = microcanonical(random_frame(rng, 4));
    CHECK(iso_rates(micro, h, 1.0, 4.0, 1.0).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("canonical weights give no isolated rates") {
    const CanonicalState can = canonical(h, 0.8);
    const RealVector dp = iso_rates(can.ensemble, h, 0.8, can.Z, 1.0);
    CHECK(dp.cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("production is non-negative and the rates sum to zero") {
    for (int k = 0; k < 100; ++k) {
      const Ensemble ens = random_ensemble(rng, 4);
      const RealVector dp = iso_rates(ens, h, 1.1, 1.0, 1.0);
      const RealVector f1 = f1_vector(ens, 1.0);
      const RealVector f2 = f2_vector(ens.frame, h, 1.1);
      CHECK(std::abs(dp.sum()) < 1e-12);
      CHECK(-dp.dot(f1) >= -1e-12);
      CHECK(std::abs(dp.dot(f2)) < 1e-10 * std::max(1.0, dp.cwiseAbs().maxCoeff()));
    }
  }
  SUBCASE("conserving variant keeps the conserved quantities") {
    for (int k = 0; k < 20; ++k) {
      const RealVector f1 = random_zero_sum(rng, 6);
      const RealVector f2 = random_zero_sum(rng, 6);
      const RealVector c1 = random_zero_sum(rng, 6);
      const RealVector conserved[] = {c1, f2};
      const RealVector dp = iso_rates_conserving(f1, f2, conserved, 1.0);
      CHECK(std::abs(dp.sum()) < 1e-12);
      CHECK(std::abs(dp.dot(c1)) < 1e-12);
      CHECK(std::abs(dp.dot(f2)) < 1e-12);
      CHECK(-dp.dot(f1) >= -1e-12);
    }
  }
}

TEST_CASE("exchange rates") {
  Rng rng(3);
  const HermitianOperator h = random_hermitian(rng, 4);
  const HeatConduction c;
  SUBCASE("no exchange at the environment temperature") {
    const Ensemble ens = random_ensemble(rng, 4);
    const double beta = inverse_contact_temperature(ens, h).value();
    CHECK(ex_rates(ens, h, 1 / beta, 1.0, c, 1 / beta).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("canonical state exchanges heat iff the temperatures differ") {
    const CanonicalState can = canonical(h, 1.2);
    const RealVector dp = ex_rates(can.ensemble, h, 1.2, can.Z, c, 2.0);
    const double q = heat_rate(h, propagator_of(can.ensemble.frame, dp));
    CHECK(q == doctest::Approx(heat_conduction_law(c.kappa_ex, 1.2, 2.0)).epsilon(1e-10));
    CHECK(ex_rates(can.ensemble, h, 1.2, can.Z, c, 1.2).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("heat follows the conduction law") {
    for (int k = 0; k < 50; ++k) {
      const Ensemble ens = random_ensemble(rng, 4);
      const auto beta = inverse_contact_temperature(ens, h);
      if (!beta || *beta <= 0) continue;
      const double theta = 1 / *beta;
      const double tb = random_uniform(rng, 0.5, 3);
      const RealVector dp = ex_rates(ens, h, theta, 1.0, c, tb);
      const double q = heat_rate(h, propagator_of(ens.frame, dp));
      CHECK(std::abs(q - heat_conduction_law(c.kappa_ex, theta, tb)) < 1e-10);
    }
  }
  SUBCASE("unreachable heat") {
    CHECK_THROWS_AS(ex_rates_along(RealVector{{0.0, 0.0}}, RealVector{{1.0, 1.0}}, 0.5),
                    UnreachableExchangeError);
  }
}

TEST_CASE("constraint_audit") {
  Rng rng(4);
  const HermitianOperator h = random_hermitian(rng, 3);
  const Ensemble ens = random_ensemble(rng, 3);
  CHECK(constraint_audit(ens, RateSplit::zero(3), h, 1.0, 1.0).all());

  const ConstitutiveModel model;
  int audited = 0;
  for (int k = 0; k < 50; ++k) {
    const Ensemble e = random_ensemble(rng, 3, std::nullopt, 1e-2);
    const auto beta = inverse_contact_temperature(e, h);
    if (!beta || *beta <= 0) continue;
    const double theta = 1 / *beta;
    const RateSplit rates(ex_rates(e, h, theta, 1.0, model.conduction, 2.0),
                          iso_rates(e, h, theta, 1.0, model.alpha));
    CHECK(constraint_audit(e, rates, h, theta, 1.0).all());
    ++audited;
  }
  CHECK(audited > 10);
}

TEST_CASE("classify_adiabatic") {
  CHECK(classify_adiabatic(0, 0, 0).kind == Adiabatic::strong);
  CHECK(classify_adiabatic(0, 0.3, -0.3).kind == Adiabatic::weak);
  CHECK(classify_adiabatic(0.2, 0.3, -0.1).kind == Adiabatic::none);
}

TEST_CASE("reversibility") {
  Rng rng(5);
  const HermitianOperator h = random_hermitian(rng, 4);
  const CanonicalState can = canonical(h, 0.9);
  const ReversibilityReport r =
      reversibility_check(can.ensemble, RateSplit(random_zero_sum(rng, 4), RealVector::Zero(4)),
                          h, 0.9, can.Z);
  CHECK(r.reversible);
  CHECK(r.canonical_case);

  const Ensemble micro = microcanonical(random_frame(rng, 4));
  CHECK(reversibility_check(micro, RateSplit(RealVector::Zero(4), random_zero_sum(rng, 4)), h, 0.9,
                            4.0)
            .reversible);

  const Ensemble ens = random_ensemble(rng, 4);
  const RealVector dp = iso_rates(ens, h, 0.9, 1.0, 1.0);
  const ReversibilityReport irr =
      reversibility_check(ens, RateSplit(RealVector::Zero(4), dp), h, 0.9, 1.0);
  CHECK_FALSE(irr.reversible);
  CHECK(irr.production > 0);
}

TEST_CASE("interaction conduction forms") {
  const HeatConduction c{1, 2, 3, 4, 5};
  CHECK(interaction_external_heat(c, 1.5, 1.5, 1.5) == 0.0);
  CHECK(interaction_internal_heat(c, 2.0, 2.0, 2.0) == 0.0);
  CHECK(interaction_external_heat(c, 1.0, 2.0, 4.0) ==
        doctest::Approx(2 * (1.0 - 0.25) + 3 * (0.5 - 0.25)));
  CHECK(fit_conductivity(0.5, 1.0, 2.0).value() == doctest::Approx(1.0));
  CHECK_FALSE(fit_conductivity(0.5, 2.0, 2.0).has_value());
}
