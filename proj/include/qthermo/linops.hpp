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

// Dense complex operator algebra on finite-dimensional (bipartite) Hilbert
// spaces. Composite indices are flattened as (k, l) -> k * d2 + l throughout.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <optional>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {

using Index = Eigen::Index;

template <typename Real>
using ComplexMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RealVectorT = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = ComplexMatrixT<double>;
using ComplexVector = ComplexVectorT<double>;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double psd = 1e-10;
inline constexpr double log_support = 1e-14;
}  // namespace tol

/// Upper bound on the total Hilbert-space dimension. Overridable through the
/// QTHERMO_MAX_DIM environment variable.
inline Index max_dimension() {
  constexpr Index fallback = 64;
  if (const char* env = std::getenv("QTHERMO_MAX_DIM")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<Index>(v);
  }
  return fallback;
}

/// Tensor-factor dimensions (d1, d2) of a bipartite space.
struct FactorDims {
  Index first = 1;
  Index second = 1;

  Index total() const { return first * second; }
  bool operator==(const FactorDims&) const = default;
};

enum class TracedFactor { first, second };

/// A Hermitian operator with optional tensor-factor structure.
///
/// Construction symmetrizes (A + A^dagger) / 2 when the Hermiticity drift is
/// below tol::hermitian (relative to max(1, max|A_ij|)) and rejects otherwise.
template <typename Real>
class HermitianT {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = ComplexMatrixT<Real>;

  HermitianT() = default;

  explicit HermitianT(Matrix m, std::optional<FactorDims> dims = std::nullopt)
      : dims_(dims) {
    if (m.rows() != m.cols()) {
      throw DimensionError("operator must be square, got " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()));
    }
    if (m.rows() == 0) throw DimensionError("operator must have positive dimension");
    if (dims_ && dims_->total() != m.rows()) {
      throw DimensionError("factor dimensions " + std::to_string(dims_->first) + "x" +
                           std::to_string(dims_->second) + " do not match dimension " +
                           std::to_string(m.rows()));
    }
    const Real drift = (m - m.adjoint()).cwiseAbs().maxCoeff();
    const Real scale = std::max<Real>(Real(1), m.cwiseAbs().maxCoeff());
    if (!(drift <= Real(tol::hermitian) * scale)) {
      throw NotHermitianError("operator is not Hermitian (drift " + std::to_string(double(drift)) +
                              ")");
    }
    m_ = (m + m.adjoint()) * Real(0.5);
  }

  static HermitianT zero(Index n, std::optional<FactorDims> dims = std::nullopt) {
    return HermitianT(Matrix::Zero(n, n), dims);
  }
  static HermitianT identity(Index n, std::optional<FactorDims> dims = std::nullopt) {
    return HermitianT(Matrix::Identity(n, n), dims);
  }
  static HermitianT diagonal(const RealVectorT<Real>& d,
                             std::optional<FactorDims> dims = std::nullopt) {
    return HermitianT(d.template cast<Scalar>().asDiagonal().toDenseMatrix(), dims);
  }

  const Matrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }
  const std::optional<FactorDims>& factor_dims() const { return dims_; }

  HermitianT with_factor_dims(FactorDims dims) const { return HermitianT(m_, dims); }

  HermitianT& operator+=(const HermitianT& o) {
    merge_dims(o);
    m_ += o.m_;
    return *this;
  }
  HermitianT& operator-=(const HermitianT& o) {
    merge_dims(o);
    m_ -= o.m_;
    return *this;
  }
  HermitianT& operator*=(Real s) {
    m_ *= s;
    return *this;
  }

  friend HermitianT operator+(HermitianT a, const HermitianT& b) { return a += b; }
  friend HermitianT operator-(HermitianT a, const HermitianT& b) { return a -= b; }
  friend HermitianT operator*(HermitianT a, Real s) { return a *= s; }
  friend HermitianT operator*(Real s, HermitianT a) { return a *= s; }

 private:
  void merge_dims(const HermitianT& o) {
    if (o.dim() != dim()) throw DimensionError("operator dimension mismatch");
    if (!dims_) dims_ = o.dims_;
  }

  Matrix m_;
  std::optional<FactorDims> dims_;
};

using HermitianOperator = HermitianT<double>;

/// Kronecker product with entries A[k,p] * B[l,q] at ((k,l),(p,q)).
template <typename DerivedA, typename DerivedB>
auto tensor_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Index n = a.rows() * b.rows();
  if (n > max_dimension()) {
    throw DimensionError("tensor product dimension " + std::to_string(n) +
                         " exceeds the configured limit " + std::to_string(max_dimension()));
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::kroneckerProduct(a.eval(), b.eval());
  return out;
}

template <typename Real>
HermitianT<Real> tensor_product(const HermitianT<Real>& a, const HermitianT<Real>& b) {
  return HermitianT<Real>(tensor_product(a.matrix(), b.matrix()),
                          FactorDims{a.dim(), b.dim()});
}

/// A (x) I on (a.dim(), d2).
template <typename Real>
HermitianT<Real> embed_first(const HermitianT<Real>& a, Index d2) {
  return tensor_product(a, HermitianT<Real>::identity(d2));
}

/// I (x) B on (d1, b.dim()).
template <typename Real>
HermitianT<Real> embed_second(Index d1, const HermitianT<Real>& b) {
  return tensor_product(HermitianT<Real>::identity(d1), b);
}

/// Partial trace over one tensor factor. Tracing the first factor returns the
/// operator on the second factor and vice versa.
template <typename Derived>
auto partial_trace(const Eigen::MatrixBase<Derived>& a, FactorDims dims, TracedFactor side) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() != a.cols() || a.rows() != dims.total()) {
    throw DimensionError("partial trace: operator does not match factor dimensions");
  }
  const Index d1 = dims.first;
  const Index d2 = dims.second;
  if (side == TracedFactor::first) {
    Matrix out = Matrix::Zero(d2, d2);
    for (Index k = 0; k < d1; ++k) out += a.block(k * d2, k * d2, d2, d2);
    return out;
  }
  Matrix out(d1, d1);
  for (Index k = 0; k < d1; ++k)
    for (Index p = 0; p < d1; ++p) out(k, p) = a.block(k * d2, p * d2, d2, d2).trace();
  return out;
}

template <typename Real>
HermitianT<Real> partial_trace(const HermitianT<Real>& a, TracedFactor side) {
  if (!a.factor_dims()) {
    throw StructureError("partial trace requires declared factor dimensions");
  }
  return HermitianT<Real>(partial_trace(a.matrix(), *a.factor_dims(), side));
}

/// [A, B] = AB - BA.
template <typename DerivedA, typename DerivedB>
auto commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError("commutator: operands must be square with equal dimension");
  }
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out = a * b - b * a;
  return out;
}

template <typename Real>
ComplexMatrixT<Real> commutator(const HermitianT<Real>& a, const HermitianT<Real>& b) {
  return commutator(a.matrix(), b.matrix());
}

/// Applies a real function to the spectrum: V f(diag(lambda)) V^dagger.
template <typename Real, typename F>
HermitianT<Real> hermitian_function(const HermitianT<Real>& h, F&& f) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrixT<Real>> es(h.matrix());
  RealVectorT<Real> values = es.eigenvalues().unaryExpr(std::forward<F>(f));
  const auto& v = es.eigenvectors();
  ComplexMatrixT<Real> out = v * values.template cast<std::complex<Real>>().asDiagonal() * v.adjoint();
  return HermitianT<Real>(out, h.factor_dims());
}

/// Ascending eigenvalues.
template <typename Real>
RealVectorT<Real> spectrum(const HermitianT<Real>& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrixT<Real>> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// Logarithm of a positive semidefinite operator on its support. Eigenvalues
/// at or below tol::log_support are treated as zero and mapped to zero.
template <typename Real>
HermitianT<Real> operator_log(const HermitianT<Real>& rho) {
  const RealVectorT<Real> ev = spectrum(rho);
  if (ev.minCoeff() < -Real(tol::psd)) {
    throw NotPositiveSemidefiniteError("operator_log: eigenvalue " +
                                       std::to_string(double(ev.minCoeff())) + " below zero");
  }
  return hermitian_function(rho, [](Real x) {
    return x > Real(tol::log_support) ? std::log(x) : Real(0);
  });
}

template <typename Real>
HermitianT<Real> operator_exp(const HermitianT<Real>& h) {
  return hermitian_function(h, [](Real x) { return std::exp(x); });
}

/// exp(-i H t / hbar).
template <typename Real>
ComplexMatrixT<Real> unitary_evolution(const HermitianT<Real>& h, Real t, Real hbar = Real(1)) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrixT<Real>> es(h.matrix());
  const auto& v = es.eigenvectors();
  ComplexVectorT<Real> phases(h.dim());
  for (Index k = 0; k < h.dim(); ++k)
    phases(k) = std::polar(Real(1), -es.eigenvalues()(k) * t / hbar);
  return v * phases.asDiagonal() * v.adjoint();
}

/// -sum lambda ln lambda over the support of a density spectrum (0 ln 0 = 0).
template <typename Real>
Real spectral_entropy(const RealVectorT<Real>& ev) {
  if (ev.size() > 0 && ev.minCoeff() < -Real(tol::psd)) {
    throw NotPositiveSemidefiniteError("entropy: eigenvalue " +
                                       std::to_string(double(ev.minCoeff())) + " below zero");
  }
  Real s = 0;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > Real(tol::log_support)) s -= ev(i) * std::log(ev(i));
  return s;
}

/// Tr(A B) without forming the product.
template <typename DerivedA, typename DerivedB>
auto trace_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a.transpose().cwiseProduct(b)).sum();
}

}  // namespace qthermo
