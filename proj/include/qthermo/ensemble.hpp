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

// State representation: an orthonormal frame of pure states carrying
// probability weights, rho = sum_j p_j |phi_j><phi_j|. Time-dependent weights
// produce the propagator rho° = sum_j dp_j |phi_j><phi_j|.

#include <optional>

#include "qthermo/linops.hpp"
#include "qthermo/units.hpp"

namespace qthermo {

namespace tol {
inline constexpr double frame = 1e-10;
inline constexpr double frame_repair = 1e-6;
inline constexpr double weight_sum = 1e-12;
inline constexpr double weight_floor = 1e-300;
inline constexpr double rate_sum = 1e-12;
}  // namespace tol

/// A normalized state vector.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);

  Index dim() const { return v_.size(); }
  const ComplexVector& amplitudes() const { return v_; }

 private:
  ComplexVector v_;
};

/// Complete orthonormal frame; column j is |phi_j>.
class Frame {
 public:
  /// Validates orthonormality within tol::frame.
  explicit Frame(ComplexMatrix columns, std::optional<FactorDims> dims = std::nullopt);

  static Frame standard(Index n, std::optional<FactorDims> dims = std::nullopt);
  /// Eigenvectors of h, ordered by ascending eigenvalue.
  static Frame eigenframe(const HermitianOperator& h);

  Index dim() const { return v_.cols(); }
  const ComplexMatrix& vectors() const { return v_; }
  PureState state(Index j) const { return PureState(v_.col(j)); }
  const std::optional<FactorDims>& factor_dims() const { return dims_; }

  /// max |<phi_k|phi_l> - delta_kl|.
  double orthonormality_error() const;

 private:
  struct Unchecked {};
  Frame(ComplexMatrix columns, std::optional<FactorDims> dims, Unchecked)
      : v_(std::move(columns)), dims_(dims) {}
  friend Frame evolve_frame(const Frame&, const HermitianOperator&, double, const Units&);
  friend Frame product_frame(const Frame&, const Frame&);

  ComplexMatrix v_;
  std::optional<FactorDims> dims_;
};

/// Product frame |phi1_k> (x) |phi2_l>, indexed k * d2 + l.
Frame product_frame(const Frame& first, const Frame& second);

/// Gram-Schmidt orthonormalization of the columns.
ComplexMatrix orthonormalize(const ComplexMatrix& columns);

/// Probability weights, 0 <= p_j <= 1, sum 1.
class WeightVector {
 public:
  explicit WeightVector(RealVector p);

  static WeightVector uniform(Index n);

  Index size() const { return p_.size(); }
  const RealVector& values() const { return p_; }
  double operator[](Index j) const { return p_(j); }

 private:
  RealVector p_;
};

/// True if sum(dp) vanishes within tol::rate_sum (scaled by max(1, |dp|_inf)).
bool is_zero_sum(const RealVector& dp);

/// Weight rates split into the exchange part (removed by isolation) and the
/// isolated part. Both must sum to zero.
class RateSplit {
 public:
  RateSplit(RealVector exchange, RealVector isolated);

  static RateSplit zero(Index n);

  Index size() const { return ex_.size(); }
  const RealVector& exchange() const { return ex_; }
  const RealVector& isolated() const { return iso_; }
  RealVector total() const { return ex_ + iso_; }

  /// Same isolated part, exchange part zeroed.
  RateSplit isolated_only() const { return RateSplit(RealVector::Zero(size()), iso_); }

 private:
  RealVector ex_;
  RealVector iso_;
};

struct Ensemble {
  Ensemble(Frame f, WeightVector w);

  Index dim() const { return frame.dim(); }

  Frame frame;
  WeightVector weights;
};

HermitianOperator density_of(const Ensemble& ens);

/// rho° = sum_j dp_j |phi_j><phi_j|; throws InvalidRateError unless sum dp = 0.
HermitianOperator propagator_of(const Frame& frame, const RealVector& dp);

/// Zero-mean projection v - mean(v).
RealVector zero_mean(const RealVector& v);

/// Diagonal expectations <phi_k|H|phi_k>.
RealVector expectations(const Frame& frame, const HermitianOperator& h);

/// f^I_k = k_B ln(Z max(p_k, floor)).
RealVector f1_vector(const Ensemble& ens, double Z, const Units& units = {});

/// f^II_k = <phi_k|H|phi_k> / theta.
RealVector f2_vector(const Frame& frame, const HermitianOperator& h, double theta);

/// f = f^I + f^II.
RealVector f_vector(const Ensemble& ens, const HermitianOperator& h, double theta, double Z,
                    const Units& units = {});

/// Maps every frame vector by exp(-i H dt / hbar). Drift in (tol::frame,
/// tol::frame_repair] is repaired by Gram-Schmidt; larger drift throws.
Frame evolve_frame(const Frame& frame, const HermitianOperator& h, double dt,
                   const Units& units = {});

}  // namespace qthermo
