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

#include "qthermo/constitutive.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace qthermo {

namespace {

constexpr double audit_tol = 1e-10;

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) {
    throw InvalidTemperatureError(std::string(what) + " must be positive, got " +
                                  std::to_string(v));
  }
}

// A force left over from cancelling f1 against f2 that is no larger than
// their rounding error.
bool at_rounding_level(const RealVector& force, const RealVector& f1, const RealVector& f2) {
  if (force.size() == 0) return true;
  const double scale = std::max(1.0, f1.cwiseAbs().maxCoeff() + f2.cwiseAbs().maxCoeff());
  return force.cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

double spread(const RealVector& v) { return v.size() ? zero_mean(v).cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

void HeatConduction::validate() const {
  for (double k : {kappa_ex, kappa_ex_1, kappa_ex_2, kappa_int_1, kappa_int_2}) {
    if (!(k > 0.0) || !std::isfinite(k)) {
      throw Error("heat conductivities must be positive and finite, got " + std::to_string(k));
    }
  }
}

void ConstitutiveModel::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error("alpha must be nonnegative and finite, got " + std::to_string(alpha));
  }
  conduction.validate();
}

double heat_conduction_law(double kappa, double theta, double t_box) {
  require_positive(theta, "contact temperature");
  require_positive(t_box, "environment temperature");
  if (!(kappa > 0.0)) throw Error("heat conductivity must be positive");
  return kappa * (1.0 / theta - 1.0 / t_box);
}

RootResult find_contact_temperature(const std::function<double(double)>& heat_of_tbox, double lo,
                                    double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error("find_contact_temperature: bracket must satisfy lo < hi");
  }
  double q_lo = heat_of_tbox(lo);
  const double q_hi = heat_of_tbox(hi);
  RootResult out;
  if (q_lo == 0.0 && q_hi == 0.0) {
    out.value = 0.5 * (lo + hi);
    out.zero_everywhere = heat_of_tbox(out.value) == 0.0;
    if (out.zero_everywhere) return out;
  }
  if (q_lo == 0.0) return {lo, false, 0};
  if (q_hi == 0.0) return {hi, false, 0};
  if (q_lo * q_hi > 0.0) {
    throw NoSignChangeError("find_contact_temperature: no sign change in [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
  }
  double mid = 0.5 * (lo + hi);
  for (out.iterations = 1; out.iterations <= 200; ++out.iterations) {
    mid = 0.5 * (lo + hi);
    const double q = heat_of_tbox(mid);
    if (std::abs(q) < 1e-12 || hi - lo < 1e-12 * std::max(1.0, std::abs(mid))) break;
    if ((q < 0) == (q_lo < 0)) {
      lo = mid;
      q_lo = q;
    } else {
      hi = mid;
    }
  }
  out.value = mid;
  return out;
}

RealVector iso_rates_pairwise(const RealVector& f1, const RealVector& f2, double alpha) {
  if (f1.size() != f2.size()) throw DimensionError("iso_rates: f vectors differ in length");
  // Same vector as alpha (g2 (g1.f2) - g1 (g2.f2)) with g1 = P0 f1, written in
  // g = P0 (f1 + f2) so that a canonical state yields exactly zero.
  const Index n = f1.size();
  const RealVector g2 = zero_mean(f2);
  const RealVector g = zero_mean(f1 + f2);
  if (at_rounding_level(g, f1, f2)) return RealVector::Zero(n);
  return zero_mean(alpha * (g2 * g.dot(f2) - g * g2.dot(f2)));
}

RealVector iso_rates_conserving(const RealVector& f1, const RealVector& f2,
                                std::span<const RealVector> conserved, double alpha) {
  const Index n = f1.size();
  if (f2.size() != n) throw DimensionError("iso_rates: f vectors differ in length");
  std::vector<RealVector> basis;
  auto add = [&](RealVector v) {
    if (v.size() != n) throw DimensionError("iso_rates: conserved vector length mismatch");
    const double norm0 = v.norm();
    if (norm0 == 0.0) return;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) v -= q.dot(v) * q;
    const double norm = v.norm();
    if (norm > 1e-10 * norm0) basis.push_back(v / norm);
  };
  add(RealVector::Ones(n));
  add(f2);
  for (const auto& c : conserved) add(c);
  RealVector pf1 = f1;
  for (const auto& q : basis) pf1 -= q.dot(pf1) * q;
  if (at_rounding_level(pf1, f1, f2)) return RealVector::Zero(n);
  return zero_mean(-alpha * zero_mean(f2).squaredNorm() * pf1);
}

RealVector ex_rates_along(const RealVector& f, const RealVector& levels, double heat) {
  if (f.size() != levels.size()) throw DimensionError("ex_rates: vector lengths differ");
  const Index n = levels.size();
  if (heat == 0.0) return RealVector::Zero(n);
  const RealVector g = zero_mean(levels);
  const RealVector gf = zero_mean(f);
  RealVector d = g;
  // A P0 f at rounding level carries no direction; projecting on it would
  // amplify noise.
  const double gf2 = gf.squaredNorm();
  if (gf.norm() > 1e-12 * std::max(1.0, f.cwiseAbs().maxCoeff())) d -= (g.dot(gf) / gf2) * gf;
  const double denom = d.dot(levels);
  if (!(std::abs(denom) > 1e-12 * g.squaredNorm()) || denom == 0.0) {
    throw UnreachableExchangeError(
        "ex_rates: the admissible exchange direction carries no heat");
  }
  return (heat / denom) * d;
}

RealVector iso_rates(const Ensemble& ens, const HermitianOperator& h, double theta, double Z,
                     double alpha, const Units& units) {
  return iso_rates_pairwise(f1_vector(ens, Z, units), f2_vector(ens.frame, h, theta), alpha);
}

RealVector ex_rates(const Ensemble& ens, const HermitianOperator& h, double theta, double Z,
                    const HeatConduction& conduction, double t_box, const Units& units) {
  const double heat = heat_conduction_law(conduction.kappa_ex, theta, t_box);
  return ex_rates_along(f_vector(ens, h, theta, Z, units), expectations(ens.frame, h), heat);
}

ConstraintAudit constraint_audit(const Ensemble& ens, const RateSplit& rates,
                                 const HermitianOperator& h, double theta, double Z,
                                 const Units& units) {
  if (rates.size() != ens.dim()) throw DimensionError("constraint_audit: length mismatch");
  const RealVector f1 = f1_vector(ens, Z, units);
  const RealVector f2 = f2_vector(ens.frame, h, theta);
  const RealVector total = rates.total();
  ConstraintAudit out;
  out.production = -rates.isolated().dot(f1);
  out.entropy_exchange = rates.exchange().dot(f2);
  out.exchange_residual = total.dot(f2) - out.entropy_exchange;
  out.entropy_rate_residual = -total.dot(f1) - (out.production + out.entropy_exchange);
  out.orthogonality = rates.exchange().dot(f1 + f2);
  out.production_ok = out.production >= -audit_tol;
  out.exchange_ok = std::abs(out.exchange_residual) <= audit_tol;
  out.entropy_rate_ok = std::abs(out.entropy_rate_residual) <= audit_tol;
  out.orthogonality_ok = std::abs(out.orthogonality) <= audit_tol;
  return out;
}

AdiabaticClass classify_adiabatic(double q_ex, double q1_ex, double q2_ex) {
  AdiabaticClass out;
  out.balance_residual = q1_ex + q2_ex;
  if (std::abs(q_ex) >= audit_tol) return out;
  if (std::abs(q1_ex) < audit_tol && std::abs(q2_ex) < audit_tol) {
    out.kind = Adiabatic::strong;
  } else if (std::abs(out.balance_residual) < audit_tol) {
    out.kind = Adiabatic::weak;
  }
  return out;
}

ReversibilityReport reversibility_from(double production, double iso_norm, double f1_spread,
                                       double f_spread) {
  constexpr double eps = 1e-12;
  ReversibilityReport out;
  out.production = production;
  out.iso_norm = iso_norm;
  out.f1_spread = f1_spread;
  out.reversible = std::abs(production) < eps && (iso_norm > eps || f1_spread > eps);
  out.canonical_case = out.reversible && f1_spread > eps && f_spread <= audit_tol;
  return out;
}

ReversibilityReport reversibility_check(const Ensemble& ens, const RateSplit& rates,
                                        const HermitianOperator& h, double theta, double Z,
                                        const Units& units) {
  if (rates.size() != ens.dim()) throw DimensionError("reversibility_check: length mismatch");
  const RealVector f1 = f1_vector(ens, Z, units);
  const RealVector f2 = f2_vector(ens.frame, h, theta);
  const double iso_norm = rates.isolated().cwiseAbs().maxCoeff();
  return reversibility_from(-rates.isolated().dot(f1), iso_norm, spread(f1), spread(f1 + f2));
}

double interaction_external_heat(const HeatConduction& c, double theta1, double theta2,
                                 double theta) {
  return c.kappa_ex_1 * (1.0 / theta1 - 1.0 / theta) + c.kappa_ex_2 * (1.0 / theta2 - 1.0 / theta);
}

double interaction_internal_heat(const HeatConduction& c, double theta1, double theta2,
                                 double theta12) {
  return c.kappa_int_1 * (1.0 / theta1 - 1.0 / theta12) +
         c.kappa_int_2 * (1.0 / theta2 - 1.0 / theta12);
}

std::optional<double> fit_conductivity(double heat, double theta, double t_box) {
  const double denom = 1.0 / theta - 1.0 / t_box;
  if (std::abs(denom) < 1e-14) return std::nullopt;
  return heat / denom;
}

}  // namespace qthermo
