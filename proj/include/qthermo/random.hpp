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

// Seeded random operators and states for property checks.

#include <cstdint>
#include <random>

#include "qthermo/ensemble.hpp"

namespace qthermo {

using Rng = std::mt19937_64;

/// SplitMix64 mix of (master, index); independent streams per case.
std::uint64_t case_seed(std::uint64_t master, std::uint64_t index);

/// Entries with independent standard normal real and imaginary parts.
ComplexMatrix random_complex(Rng& rng, Index rows, Index cols);

/// (G + G^dagger) / 2 with G complex Gaussian, times `scale`.
HermitianOperator random_hermitian(Rng& rng, Index n, double scale = 1.0,
                                   std::optional<FactorDims> dims = std::nullopt);

/// Haar-distributed unitary (QR of a Gaussian matrix, phases fixed).
ComplexMatrix random_unitary(Rng& rng, Index n);

Frame random_frame(Rng& rng, Index n, std::optional<FactorDims> dims = std::nullopt);

/// Uniform on the simplex, each weight at least `floor`.
WeightVector random_weights(Rng& rng, Index n, double floor = 0.0);

Ensemble random_ensemble(Rng& rng, Index n, std::optional<FactorDims> dims = std::nullopt,
                         double floor = 1e-6);

/// W W^dagger / Tr, W Gaussian: a full-rank mixed state on the product space.
HermitianOperator random_density(Rng& rng, FactorDims dims);

/// Gaussian vector projected to zero sum.
RealVector random_zero_sum(Rng& rng, Index n, double scale = 1.0);

double random_uniform(Rng& rng, double lo, double hi);

}  // namespace qthermo
