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

#include "qthermo/ensemble.hpp"

#include <cmath>
#include <string>

namespace qthermo {

PureState::PureState(ComplexVector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) throw DimensionError("state vector must be non-empty");
  if (std::abs(v_.norm() - 1.0) > 1e-12) {
    throw InvalidStateError("state vector is not normalized (norm " + std::to_string(v_.norm()) +
                            ")");
  }
}

namespace {

double gram_error(const ComplexMatrix& v) {
  const Index n = v.cols();
  return (v.adjoint() * v - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace

Frame::Frame(ComplexMatrix columns, std::optional<FactorDims> dims)
    : v_(std::move(columns)), dims_(dims) {
  if (v_.rows() != v_.cols()) {
    throw InvalidStateError("frame must be complete: " + std::to_string(v_.cols()) +
                            " vectors in dimension " + std::to_string(v_.rows()));
  }
  if (v_.rows() == 0) throw DimensionError("frame must be non-empty");
  if (dims_ && dims_->total() != v_.rows()) throw DimensionError("frame factor dims mismatch");
  const double err = gram_error(v_);
  if (!(err <= tol::frame)) {
    throw InvalidStateError("frame is not orthonormal (error " + std::to_string(err) + ")");
  }
}

Frame Frame::standard(Index n, std::optional<FactorDims> dims) {
  return Frame(ComplexMatrix::Identity(n, n), dims);
}

Frame Frame::eigenframe(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  return Frame(es.eigenvectors(), h.factor_dims());
}

double Frame::orthonormality_error() const { return gram_error(v_); }

Frame product_frame(const Frame& first, const Frame& second) {
  return Frame(tensor_product(first.vectors(), second.vectors()),
               FactorDims{first.dim(), second.dim()});
}

ComplexMatrix orthonormalize(const ComplexMatrix& columns) {
  ComplexMatrix q = columns;
  for (Index j = 0; j < q.cols(); ++j) {
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass)
      for (Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    const double n = q.col(j).norm();
    if (n < 1e-300) throw InvalidStateError("orthonormalize: linearly dependent columns");
    q.col(j) /= n;
  }
  return q;
}

WeightVector::WeightVector(RealVector p) : p_(std::move(p)) {
  if (p_.size() == 0) throw DimensionError("weight vector must be non-empty");
  for (Index j = 0; j < p_.size(); ++j) {
    if (!std::isfinite(p_(j)) || p_(j) < 0.0 || p_(j) > 1.0) {
      throw InvalidStateError("weight " + std::to_string(j) + " = " + std::to_string(p_(j)) +
                              " outside [0, 1]");
    }
  }
  if (std::abs(p_.sum() - 1.0) > tol::weight_sum) {
    throw InvalidStateError("weights sum to " + std::to_string(p_.sum()) + ", expected 1");
  }
}

WeightVector WeightVector::uniform(Index n) {
  return WeightVector(RealVector::Constant(n, 1.0 / double(n)));
}

bool is_zero_sum(const RealVector& dp) {
  const double scale = dp.size() ? std::max(1.0, dp.cwiseAbs().maxCoeff()) : 1.0;
  return std::abs(dp.sum()) <= tol::rate_sum * scale;
}

RateSplit::RateSplit(RealVector exchange, RealVector isolated)
    : ex_(std::move(exchange)), iso_(std::move(isolated)) {
  if (ex_.size() != iso_.size()) throw DimensionError("rate split parts differ in length");
  if (!is_zero_sum(ex_)) throw InvalidRateError("exchange rates do not sum to zero");
  if (!is_zero_sum(iso_)) throw InvalidRateError("isolated rates do not sum to zero");
}

RateSplit RateSplit::zero(Index n) { return RateSplit(RealVector::Zero(n), RealVector::Zero(n)); }

Ensemble::Ensemble(Frame f, WeightVector w) : frame(std::move(f)), weights(std::move(w)) {
  if (frame.dim() != weights.size()) {
    throw DimensionError("ensemble: " + std::to_string(weights.size()) + " weights for a frame of " +
                         std::to_string(frame.dim()) + " states");
  }
}

namespace {

HermitianOperator frame_diagonal(const Frame& frame, const RealVector& d) {
  const ComplexMatrix& v = frame.vectors();
  return HermitianOperator(v * d.cast<std::complex<double>>().asDiagonal() * v.adjoint(),
                           frame.factor_dims());
}

}  // namespace

HermitianOperator density_of(const Ensemble& ens) {
  return frame_diagonal(ens.frame, ens.weights.values());
}

HermitianOperator propagator_of(const Frame& frame, const RealVector& dp) {
  if (dp.size() != frame.dim()) throw DimensionError("propagator: rate vector length mismatch");
  if (!is_zero_sum(dp)) {
    throw InvalidRateError("propagator: weight rates sum to " + std::to_string(dp.sum()));
  }
  return frame_diagonal(frame, dp);
}

RealVector zero_mean(const RealVector& v) { return (v.array() - v.mean()).matrix(); }

RealVector expectations(const Frame& frame, const HermitianOperator& h) {
  if (h.dim() != frame.dim()) throw DimensionError("expectations: dimension mismatch");
  const ComplexMatrix& v = frame.vectors();
  return (v.adjoint() * h.matrix() * v).diagonal().real();
}

RealVector f1_vector(const Ensemble& ens, double Z, const Units& units) {
  if (!(Z > 0.0)) throw Error("f1_vector: Z must be positive");
  const RealVector& p = ens.weights.values();
  RealVector f(p.size());
  for (Index k = 0; k < p.size(); ++k)
    f(k) = units.k_B * std::log(Z * std::max(p(k), tol::weight_floor));
  return f;
}

RealVector f2_vector(const Frame& frame, const HermitianOperator& h, double theta) {
  if (!(theta > 0.0)) {
    throw InvalidTemperatureError("f2_vector: temperature must be positive, got " +
                                  std::to_string(theta));
  }
  return expectations(frame, h) / theta;
}

RealVector f_vector(const Ensemble& ens, const HermitianOperator& h, double theta, double Z,
                    const Units& units) {
  return f1_vector(ens, Z, units) + f2_vector(ens.frame, h, theta);
}

Frame evolve_frame(const Frame& frame, const HermitianOperator& h, double dt, const Units& units) {
  if (!std::isfinite(dt)) throw Error("evolve_frame: non-finite time step");
  if (h.dim() != frame.dim()) throw DimensionError("evolve_frame: dimension mismatch");
  if (dt == 0.0) return frame;
  ComplexMatrix v = unitary_evolution(h, dt, units.hbar) * frame.vectors();
  const double err = gram_error(v);
  if (err > tol::frame_repair) {
    throw InvalidStateError("evolve_frame: orthonormality drift " + std::to_string(err));
  }
  if (err > tol::frame) v = orthonormalize(v);
  return Frame(std::move(v), frame.factor_dims(), Frame::Unchecked{});
}

}  // namespace qthermo
