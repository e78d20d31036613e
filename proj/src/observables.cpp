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

#include "qthermo/observables.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qthermo {

namespace {

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::complex<double> t = trace_product(a, b);
  const double scale = std::max(1.0, std::abs(t.real()));
  if (std::abs(t.imag()) > 1e-12 * scale) {
    throw Error("trace of Hermitian product has imaginary part " + std::to_string(t.imag()));
  }
  return t.real();
}

void check_dims(const HermitianOperator& a, const HermitianOperator& b, const char* what) {
  if (a.dim() != b.dim()) throw DimensionError(std::string(what) + ": dimension mismatch");
}

// dp . f^I for zero-sum dp. The k_B ln Z sum(dp) part vanishes for admissible
// rates and is not evaluated: adding ln Z to every entry first would only
// leave its rounding residue behind.
double rates_dot_f1(const Ensemble& ens, const RealVector& dp, const Units& units) {
  return dp.dot(f1_vector(ens, 1.0, units));
}

void require_z(double Z) {
  if (!(Z > 0.0) || !std::isfinite(Z)) throw Error("normalization Z must be positive and finite");
}

}  // namespace

double energy(const HermitianOperator& h, const HermitianOperator& rho) {
  check_dims(h, rho, "energy");
  return real_trace_product(h.matrix(), rho.matrix());
}

double heat_rate(const HermitianOperator& h, const HermitianOperator& propagator) {
  check_dims(h, propagator, "heat_rate");
  return real_trace_product(h.matrix(), propagator.matrix());
}

PowerRate power_rate(std::span<const HermitianOperator> generators, const HermitianOperator& rho,
                     const RealVector& a_dot) {
  if (static_cast<Index>(generators.size()) != a_dot.size()) {
    throw DimensionError("power_rate: " + std::to_string(generators.size()) +
                         " generators for " + std::to_string(a_dot.size()) + " rates");
  }
  PowerRate out;
  out.forces.resize(a_dot.size());
  for (Index i = 0; i < a_dot.size(); ++i) {
    check_dims(generators[i], rho, "power_rate");
    out.forces(i) = real_trace_product(generators[i].matrix(), rho.matrix());
  }
  out.value = a_dot.size() ? out.forces.dot(a_dot) : 0.0;
  return out;
}

double shannon_entropy(const HermitianOperator& rho, const Units& units) {
  return units.k_B * spectral_entropy(spectrum(rho));
}

double entropy_rate(const Ensemble& ens, const RealVector& dp, double Z, const Units& units) {
  if (dp.size() != ens.dim()) throw DimensionError("entropy_rate: rate vector length mismatch");
  if (!is_zero_sum(dp)) throw InvalidRateError("entropy_rate: rates do not sum to zero");
  require_z(Z);
  return -rates_dot_f1(ens, dp, units);
}

double entropy_rate_operator(const HermitianOperator& rho, const HermitianOperator& propagator,
                             double Z, const Units& units) {
  check_dims(rho, propagator, "entropy_rate_operator");
  const HermitianOperator log_rho = operator_log(rho);
  // ln(Z rho) = ln Z + ln rho on the support; the ln Z term drops with Tr rho° = 0.
  const double tr_prop = propagator.matrix().trace().real();
  return -units.k_B *
         (real_trace_product(propagator.matrix(), log_rho.matrix()) + std::log(Z) * tr_prop);
}

double entropy_exchange(const Frame& frame, const RealVector& dp_ex, const HermitianOperator& h,
                        double theta) {
  if (dp_ex.size() != frame.dim()) throw DimensionError("entropy_exchange: length mismatch");
  if (!is_zero_sum(dp_ex)) throw InvalidRateError("entropy_exchange: rates do not sum to zero");
  return dp_ex.dot(f2_vector(frame, h, theta));
}

EntropyProduction entropy_production(const Ensemble& ens, const RateSplit& rates,
                                     const HermitianOperator& h, double theta, double Z,
                                     const Units& units) {
  if (rates.size() != ens.dim()) throw DimensionError("entropy_production: length mismatch");
  require_z(Z);
  const RealVector f2 = f2_vector(ens.frame, h, theta);
  const double ex_f1 = rates_dot_f1(ens, rates.exchange(), units);
  const double iso_f1 = rates_dot_f1(ens, rates.isolated(), units);
  const double ex_f2 = rates.exchange().dot(f2);
  const double iso_f2 = rates.isolated().dot(f2);
  EntropyProduction out;
  out.value = -(ex_f1 + iso_f1 + ex_f2 + iso_f2);
  out.isolated_route = -iso_f1;
  out.exchange_constraint = ex_f1 + ex_f2;
  out.isolated_constraint = iso_f2;
  out.split_admissible = std::abs(out.exchange_constraint) <= tol::identity &&
                         std::abs(out.isolated_constraint) <= tol::identity;
  out.consistent =
      !out.split_admissible || std::abs(out.value - out.isolated_route) <= tol::identity;
  return out;
}

ContactTemperature contact_temperature_qm(const Ensemble& ens, const RealVector& dp_ex,
                                          const HermitianOperator& h, double Z,
                                          const Units& units) {
  if (dp_ex.size() != ens.dim()) throw DimensionError("contact_temperature: length mismatch");
  if (!is_zero_sum(dp_ex)) throw InvalidRateError("contact_temperature: rates do not sum to zero");
  const double heat = dp_ex.dot(expectations(ens.frame, h));
  require_z(Z);
  const double entropy = -rates_dot_f1(ens, dp_ex, units);
  if (std::abs(entropy) < tol::temperature_denominator) {
    return {TemperatureStatus::zero_entropy_exchange, std::numeric_limits<double>::infinity()};
  }
  if (std::abs(heat) < tol::temperature_denominator) {
    return {TemperatureStatus::zero_heat_exchange, 0.0};
  }
  return {TemperatureStatus::defined, heat / entropy};
}

std::optional<double> fitted_inverse_temperature(const RealVector& f1, const RealVector& levels) {
  if (f1.size() != levels.size()) throw DimensionError("inverse temperature: length mismatch");
  const RealVector g = zero_mean(levels);
  const double norm2 = g.squaredNorm();
  const double scale = std::max(1.0, levels.cwiseAbs().maxCoeff());
  if (norm2 <= 1e-28 * scale * scale) return std::nullopt;
  return -g.dot(f1) / norm2;
}

std::optional<double> inverse_contact_temperature(const Ensemble& ens, const HermitianOperator& h,
                                                  const Units& units) {
  return fitted_inverse_temperature(f1_vector(ens, 1.0, units), expectations(ens.frame, h));
}

PartialEntropies partial_entropies(const HermitianOperator& rho_com, const Units& units) {
  if (!rho_com.factor_dims()) {
    throw StructureError("partial_entropies: density operator has no factor dimensions");
  }
  const FactorDims dims = *rho_com.factor_dims();
  const HermitianOperator rho1 = partial_trace(rho_com, TracedFactor::second);
  const HermitianOperator rho2 = partial_trace(rho_com, TracedFactor::first);
  PartialEntropies out;
  out.S = shannon_entropy(rho_com, units);
  out.S1 = shannon_entropy(rho1, units);
  out.S2 = shannon_entropy(rho2, units);
  out.deficiency = out.S1 + out.S2 - out.S;

  const HermitianOperator log1 = embed_first(operator_log(rho1), dims.second);
  const HermitianOperator log2 = embed_second(dims.first, operator_log(rho2));
  const double via1 = -units.k_B * real_trace_product(rho_com.matrix(), log1.matrix());
  const double via2 = -units.k_B * real_trace_product(rho_com.matrix(), log2.matrix());
  out.trace_identity_residual = std::max(std::abs(via1 - out.S1), std::abs(via2 - out.S2));
  return out;
}

ExchangeChainReport entropy_exchange_inequality(std::span<const HeatPart> parts, double theta,
                                                double t_box) {
  if (!(theta > 0.0) || !(t_box > 0.0)) {
    throw InvalidTemperatureError("entropy_exchange_inequality: temperatures must be positive");
  }
  double q_plus = 0, q_minus = 0, xi_plus = 0, xi_minus = 0, q = 0;
  ExchangeChainReport out;
  for (const HeatPart& part : parts) {
    if (!(part.temperature > 0.0)) {
      throw InvalidTemperatureError("entropy_exchange_inequality: part temperature must be positive");
    }
    const double xi = part.heat / part.temperature;
    out.parts_sum += xi;
    q += part.heat;
    if (part.heat > 0) {
      q_plus += part.heat;
      xi_plus += xi;
    } else if (part.heat < 0) {
      q_minus += part.heat;
      xi_minus += xi;
    }
  }
  out.compound = q / theta;
  out.reservoir = q / t_box;
  out.theta_plus = q_plus > 0 ? q_plus / xi_plus : 0.0;
  out.theta_minus = q_minus < 0 ? q_minus / xi_minus : std::numeric_limits<double>::infinity();

  const double slack = 1e-12;
  out.theta_consistent = theta >= out.theta_plus * (1 - slack) &&
                         (std::isinf(out.theta_minus) || theta <= out.theta_minus * (1 + slack));
  const double scale = std::max({1.0, std::abs(out.parts_sum), std::abs(out.compound)});
  out.parts_link_holds = out.parts_sum >= out.compound - slack * scale;
  out.reservoir_link_holds = out.compound >= out.reservoir - slack * scale;
  if (out.theta_consistent && !out.parts_link_holds) {
    out.violated = ChainLink::parts_vs_compound;
  } else if (!out.reservoir_link_holds) {
    out.violated = ChainLink::compound_vs_reservoir;
  }
  return out;
}

}  // namespace qthermo
