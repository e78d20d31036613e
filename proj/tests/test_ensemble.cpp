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

#include <algorithm>
#include <cmath>

#include "qthermo/bipartite.hpp"
#include "qthermo/ensemble.hpp"
#include "qthermo/random.hpp"

using namespace qthermo;

namespace {

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("weights and frames are validated") {
  CHECK_THROWS_AS(WeightVector(RealVector{{0.5, 0.6}}), InvalidStateError);
  CHECK_THROWS_AS(WeightVector(RealVector{{1.2, -0.2}}), InvalidStateError);
  ComplexMatrix skew = ComplexMatrix::Identity(2, 2);
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(Frame{skew}, InvalidStateError);
  CHECK_THROWS_AS(RateSplit(RealVector{{1.0, 0.0}}, RealVector::Zero(2)), InvalidRateError);
}

TEST_CASE("density_of") {
  Rng rng(1);
  SUBCASE("uniform weights give I/N") {
    const Ensemble ens(random_frame(rng, 5), WeightVector::uniform(5));
    CHECK(max_abs_diff(density_of(ens).matrix(), ComplexMatrix::Identity(5, 5) / 5.0) < 1e-14);
  }
  SUBCASE("a unit weight gives the projector onto that vector") {
    const Frame frame = random_frame(rng, 3);
    const Ensemble ens(frame, WeightVector(RealVector{{1.0, 0.0, 0.0}}));
    const ComplexVector v = frame.vectors().col(0);
    CHECK(max_abs_diff(density_of(ens).matrix(), v * v.adjoint()) < 1e-14);
  }
  SUBCASE("spectrum equals the sorted weights") {
    for (int k = 0; k < 20; ++k) {
      const Ensemble ens = random_ensemble(rng, 4);
      RealVector p = ens.weights.values();
      std::sort(p.data(), p.data() + p.size());
      CHECK((spectrum(density_of(ens)) - p).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("propagator_of") {
  Rng rng(2);
  const Frame frame = random_frame(rng, 2);
  CHECK(propagator_of(frame, RealVector::Zero(2)).matrix().cwiseAbs().maxCoeff() == 0.0);

  const double delta = 0.3;
  const ComplexVector v0 = frame.vectors().col(0);
  const ComplexVector v1 = frame.vectors().col(1);
  const HermitianOperator r = propagator_of(frame, RealVector{{delta, -delta}});
  CHECK(max_abs_diff(r.matrix(), delta * (v0 * v0.adjoint() - v1 * v1.adjoint())) < 1e-15);
  CHECK(std::abs(r.matrix().trace()) < 1e-15);

  for (int k = 0; k < 20; ++k) {
    const Frame f = random_frame(rng, 6);
    CHECK(std::abs(propagator_of(f, random_zero_sum(rng, 6)).matrix().trace()) < 1e-12);
  }
  CHECK_THROWS_AS(propagator_of(frame, RealVector{{0.1, 0.0}}), InvalidRateError);
}

TEST_CASE("f1_vector") {
  const Ensemble micro(Frame::standard(4), WeightVector::uniform(4));
  CHECK(f1_vector(micro, 4.0).cwiseAbs().maxCoeff() < 1e-15);

  const Ensemble half(Frame::standard(2), WeightVector::uniform(2));
  const RealVector f = f1_vector(half, 1.0);
  CHECK(f(0) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(f(1) == doctest::Approx(std::log(0.5)).epsilon(1e-15));

  // -dp . f1 does not see Z when sum dp = 0.
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const Ensemble ens = random_ensemble(rng, 5);
    const RealVector dp = random_zero_sum(rng, 5);
    const double a = -dp.dot(f1_vector(ens, 1.0));
    const double b = -dp.dot(f1_vector(ens, 1e3));
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("f2_vector") {
  const HermitianOperator h = HermitianOperator::diagonal(RealVector{{0.0, 1.0}});
  const Frame frame = Frame::eigenframe(h);
  CHECK(f2_vector(frame, HermitianOperator::zero(2), 1.0).cwiseAbs().maxCoeff() == 0.0);
  const RealVector f2 = f2_vector(frame, h, 1.0);
  CHECK(f2(0) == doctest::Approx(0.0));
  CHECK(f2(1) == doctest::Approx(1.0));
  CHECK((f2_vector(frame, h, 2.0) - 0.5 * f2).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(f2_vector(frame, h, 0.0), InvalidTemperatureError);
}

TEST_CASE("f_vector") {
  Rng rng(6);
  const HermitianOperator h = random_hermitian(rng, 4);
  const double theta = 1.3;
  const CanonicalState can = canonical(h, theta);
  CHECK(f_vector(can.ensemble, h, theta, can.Z).cwiseAbs().maxCoeff() < 1e-12);

  const Ensemble micro = microcanonical(3);
  CHECK(f_vector(micro, HermitianOperator::zero(3), 1.0, 3.0).cwiseAbs().maxCoeff() < 1e-15);

  const Ensemble ens = random_ensemble(rng, 4);
  const RealVector f = f_vector(ens, h, theta, 2.0);
  CHECK(f == f1_vector(ens, 2.0) + f2_vector(ens.frame, h, theta));
}

TEST_CASE("evolve_frame") {
  Rng rng(8);
  const Frame frame = random_frame(rng, 4);
  const HermitianOperator h = random_hermitian(rng, 4);
  CHECK(max_abs_diff(evolve_frame(frame, h, 0.0).vectors(), frame.vectors()) == 0.0);

  // H diagonal in the frame: only phases change.
  const HermitianOperator hd = HermitianOperator::diagonal(RealVector{{0.0, 1.0, 2.5, -1.0}});
  const Ensemble ens(Frame::eigenframe(hd), WeightVector(RealVector{{0.1, 0.2, 0.3, 0.4}}));
  const Ensemble moved(evolve_frame(ens.frame, hd, 0.7), ens.weights);
  CHECK(max_abs_diff(density_of(moved).matrix(), density_of(ens).matrix()) < 1e-14);

  for (int k = 0; k < 20; ++k) {
    const Frame f = evolve_frame(random_frame(rng, 5), random_hermitian(rng, 5),
                                 random_uniform(rng, -2, 2));
    CHECK(f.orthonormality_error() < 1e-10);
  }
}
