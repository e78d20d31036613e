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

#include "qthermo/random.hpp"

#include <cmath>

namespace qthermo {

std::uint64_t case_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double random_uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ComplexMatrix random_complex(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) m(r, c) = {normal(rng), normal(rng)};
  return m;
}

HermitianOperator random_hermitian(Rng& rng, Index n, double scale,
                                   std::optional<FactorDims> dims) {
  const ComplexMatrix g = random_complex(rng, n, n);
  return HermitianOperator((g + g.adjoint()) * (0.5 * scale), dims);
}

ComplexMatrix random_unitary(Rng& rng, Index n) {
  const Eigen::HouseholderQR<ComplexMatrix> qr(random_complex(rng, n, n));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

Frame random_frame(Rng& rng, Index n, std::optional<FactorDims> dims) {
  return Frame(random_unitary(rng, n), dims);
}

WeightVector random_weights(Rng& rng, Index n, double floor) {
  std::exponential_distribution<double> expo(1.0);
  RealVector p(n);
  for (Index k = 0; k < n; ++k) p(k) = expo(rng);
  p /= p.sum();
  if (floor > 0) {
    p = (p.array() * (1.0 - floor * double(n)) + floor).matrix();
    p /= p.sum();
  }
  return WeightVector(p);
}

Ensemble random_ensemble(Rng& rng, Index n, std::optional<FactorDims> dims, double floor) {
  Frame frame = random_frame(rng, n, dims);
  return Ensemble(std::move(frame), random_weights(rng, n, floor));
}

HermitianOperator random_density(Rng& rng, FactorDims dims) {
  const ComplexMatrix w = random_complex(rng, dims.total(), dims.total());
  ComplexMatrix rho = w * w.adjoint();
  rho /= rho.trace().real();
  return HermitianOperator(rho, dims);
}

RealVector random_zero_sum(Rng& rng, Index n, double scale) {
  std::normal_distribution<double> normal;
  RealVector v(n);
  for (Index k = 0; k < n; ++k) v(k) = normal(rng) * scale;
  return zero_mean(v);
}

}  // namespace qthermo
