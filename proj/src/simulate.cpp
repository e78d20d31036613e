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

#include "qthermo/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qthermo {

namespace {

constexpr double renormalize_threshold = 1e-13;

// Level energies <phi_k|X|phi_k> of every Hamiltonian ingredient in a fixed
// frame, so that H(a(s)) levels cost O(N) per evaluation.
struct FrameLevels {
  PerPart<RealVector> base;
  PerPart<std::vector<RealVector>> own;
  PerPart<std::vector<RealVector>> coupling;

  FrameLevels(const Frame& frame, const CompoundHamiltonian& h) {
    for (Part p : all_parts) {
      const std::size_t k = index_of(p);
      const PartHamiltonian& part = h.part(p);
      base[k] = expectations(frame, part.base);
      for (const auto& g : part.own) own[k].push_back(expectations(frame, g));
      for (const auto& g : part.coupling) coupling[k].push_back(expectations(frame, g));
    }
  }

  PerPart<RealVector> at(const WorkState& w) const {
    PerPart<RealVector> out = base;
    for (Part p : all_parts) {
      const std::size_t k = index_of(p);
      const RealVector& a = w.own_values(p);
      for (std::size_t i = 0; i < own[k].size(); ++i) out[k] += a(Index(i)) * own[k][i];
      for (std::size_t i = 0; i < coupling[k].size(); ++i) out[k] += w.a12(Index(i)) * coupling[k][i];
    }
    return out;
  }
};

struct Rates {
  RealVector ex;
  RealVector iso;
  bool unreachable = false;
};

struct RateContext {
  const ConstitutiveModel& model;
  double k_B;
  bool isolated;
  bool track;
};

Rates evaluate_rates(const RateContext& ctx, const PerPart<RealVector>& parts, double t_box,
                     const RealVector& p) {
  const Index n = p.size();
  RealVector f1(n);
  for (Index k = 0; k < n; ++k) f1(k) = ctx.k_B * std::log(std::max(p(k), tol::weight_floor));
  const RealVector levels = parts[0] + parts[1] + parts[2];
  const std::optional<double> beta_fit = fitted_inverse_temperature(f1, levels);
  const double beta = beta_fit.value_or(0.0);
  const RealVector f2 = beta * levels;

  Rates out;
  if (ctx.model.iso_mode == IsoMode::pairwise) {
    out.iso = iso_rates_pairwise(f1, f2, ctx.model.alpha);
  } else {
    out.iso = iso_rates_conserving(f1, f2, parts, ctx.model.alpha);
  }
  out.ex = RealVector::Zero(n);
  if (!ctx.isolated) {
    const double beta_box = ctx.track ? beta : 1.0 / t_box;
    const double heat = ctx.model.conduction.kappa_ex * (beta - beta_box);
    try {
      out.ex = ex_rates_along(f1 + f2, levels, heat);
    } catch (const UnreachableExchangeError&) {
      out.unreachable = true;
    }
  }
  return out;
}

// Scales the whole rate vector so that p + tau * rate stays at or above p/2.
bool damp(const RealVector& p, Rates& r, double tau) {
  const RealVector total = r.ex + r.iso;
  double factor = 1.0;
  for (Index k = 0; k < p.size(); ++k) {
    if (p(k) + tau * total(k) < 0.0) {
      factor = std::min(factor, std::max(p(k), 0.0) / (std::abs(total(k)) * tau * 2.0));
    }
  }
  if (factor >= 1.0) return false;
  r.ex *= factor;
  r.iso *= factor;
  return true;
}

struct WeightFlow {
  const FrameLevels& levels;
  const Schedule& schedule;
  RateContext ctx;

  RealVector rate(const RealVector& base, const RealVector& p, double s, double tau,
                  bool& damped, long& unreachable) const {
    const double t_box = ctx.track ? std::numeric_limits<double>::infinity() : schedule.t_box_at(s);
    Rates r = evaluate_rates(ctx, levels.at(schedule.work_at(s)), t_box, p);
    if (r.unreachable) ++unreachable;
    if (damp(base, r, tau)) damped = true;
    return r.ex + r.iso;
  }

  // One RK4 step of length tau starting at time s.
  RealVector advance(const RealVector& p, double s, double tau, bool& damped,
                     long& unreachable) const {
    const RealVector k1 = rate(p, p, s, tau, damped, unreachable);
    const RealVector k2 = rate(p, p + 0.5 * tau * k1, s + 0.5 * tau, tau, damped, unreachable);
    const RealVector k3 = rate(p, p + 0.5 * tau * k2, s + 0.5 * tau, tau, damped, unreachable);
    const RealVector k4 = rate(p, p + tau * k3, s + tau, tau, damped, unreachable);
    return p + (tau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
};

RealVector tidy_weights(RealVector p, RunStatistics* stats) {
  for (Index k = 0; k < p.size(); ++k) p(k) = std::clamp(p(k), 0.0, 1.0);
  const double drift = std::abs(p.sum() - 1.0);
  if (stats) stats->max_weight_drift = std::max(stats->max_weight_drift, drift);
  if (drift > renormalize_threshold) {
    p /= p.sum();
    if (stats) ++stats->weight_repairs;
  }
  return p;
}

double spread(const RealVector& v) { return zero_mean(v).cwiseAbs().maxCoeff(); }

TemperatureSet with_box(TemperatureSet t, double t_box) {
  t.t_box = t_box;
  return t;
}

double tracked_t_box(const BipartiteSystem& sys) {
  const double beta = compound_inverse_temperature(sys);
  return beta > 0 ? 1.0 / beta : std::numeric_limits<double>::infinity();
}

}  // namespace

PiecewiseLinear::PiecewiseLinear(std::vector<double> times, std::vector<RealVector> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.empty()) throw Error("schedule needs at least one knot");
  if (times_.size() != values_.size()) throw DimensionError("schedule: times and values differ");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i])) throw Error("schedule: non-finite knot time");
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw Error("schedule: knot times must be strictly increasing");
    }
    if (values_[i].size() != values_[0].size()) throw DimensionError("schedule: ragged values");
    if (!values_[i].allFinite()) throw Error("schedule: non-finite value");
  }
}

PiecewiseLinear PiecewiseLinear::constant(RealVector value) {
  return PiecewiseLinear({0.0}, {std::move(value)});
}

RealVector PiecewiseLinear::value(double t) const {
  if (empty()) throw Error("schedule is empty");
  if (t <= times_.front()) return values_.front();
  if (t >= times_.back()) return values_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t i = std::size_t(it - times_.begin()) - 1;
  const double w = (t - times_[i]) / (times_[i + 1] - times_[i]);
  return (1.0 - w) * values_[i] + w * values_[i + 1];
}

RealVector PiecewiseLinear::slope(double t) const {
  if (empty()) throw Error("schedule is empty");
  if (t < times_.front() || t >= times_.back()) return RealVector::Zero(width());
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t i = std::size_t(it - times_.begin()) - 1;
  return (values_[i + 1] - values_[i]) / (times_[i + 1] - times_[i]);
}

bool PiecewiseLinear::operator==(const PiecewiseLinear& o) const {
  if (times_ != o.times_ || values_.size() != o.values_.size()) return false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].size() != o.values_[i].size() || values_[i] != o.values_[i]) return false;
  }
  return true;
}

WorkState Schedule::work_at(double t) const {
  return {a1.value(t), a2.value(t), a12.value(t), a1.slope(t), a2.slope(t), a12.slope(t)};
}

double Schedule::t_box_at(double t) const {
  const RealVector v = t_box.value(t);
  if (v.size() != 1) throw DimensionError("T_box schedule must be scalar");
  return v(0);
}

void Scenario::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("dt must be positive and finite");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error("t_end must be nonnegative and finite");
  if (record_every < 1) throw Error("record_every must be at least 1");
  if (max_damping_events < 0) throw Error("max_damping_events must be nonnegative");
  model.validate();
  const CompoundHamiltonian& h = initial.hamiltonian();
  auto check_width = [](const PiecewiseLinear& s, Index n, const char* what) {
    if (!s.empty() && s.width() != n) {
      throw DimensionError(std::string("schedule ") + what + " has width " +
                           std::to_string(s.width()) + ", expected " + std::to_string(n));
    }
  };
  check_width(schedule.a1, h.own_count(Part::one), "a1");
  check_width(schedule.a2, h.own_count(Part::two), "a2");
  check_width(schedule.a12, h.coupling_count(), "a12");
  if (!schedule.t_box.empty()) {
    check_width(schedule.t_box, 1, "T_box");
    for (const auto& v : schedule.t_box.values()) {
      if (!(v(0) > 0.0)) throw InvalidTemperatureError("T_box schedule must stay positive");
    }
  }
  for (const auto& e : isolation_events) {
    if (!(e.time >= 0.0) || e.time > t_end) {
      throw Error("isolation event at t = " + std::to_string(e.time) + " outside [0, t_end]");
    }
  }
}

ModelRates model_rates(const BipartiteSystem& sys, const ConstitutiveModel& model, bool track) {
  const FrameLevels levels(sys.state().frame, sys.hamiltonian());
  const RateContext ctx{model, sys.units().k_B, sys.isolated(), track};
  Rates r = evaluate_rates(ctx, levels.at(sys.work()), sys.temps().t_box,
                           sys.state().weights.values());
  return {RateSplit(std::move(r.ex), std::move(r.iso)), r.unreachable};
}

BipartiteSystem prepare(const BipartiteSystem& sys, const ConstitutiveModel& model,
                        const Schedule& schedule, double t) {
  BipartiteSystem out = sys.with_work(schedule.work_at(t));
  if (schedule.track_contact_temperature) {
    out = out.with_temperatures(with_box(out.temps(), tracked_t_box(out)));
  } else {
    out = out.with_temperatures(with_box(out.temps(), schedule.t_box_at(t)));
  }
  return out.with_rates(model_rates(out, model, schedule.track_contact_temperature).rates);
}

BipartiteSystem step(const BipartiteSystem& sys, const ConstitutiveModel& model,
                     const Schedule& schedule, double t, double dt, RunStatistics* stats) {
  if (!std::isfinite(dt) || dt < 0.0) throw SimulationError("invalid time step", t);
  if (dt == 0.0) return sys;
  const Frame& frame = sys.state().frame;
  const FrameLevels levels(frame, sys.hamiltonian());
  const WeightFlow flow{levels, schedule,
                        RateContext{model, sys.units().k_B, sys.isolated(),
                                    schedule.track_contact_temperature}};
  bool damped = false;
  long unreachable = 0;
  const double half = 0.5 * dt;

  RealVector p = flow.advance(sys.state().weights.values(), t, half, damped, unreachable);
  p = tidy_weights(std::move(p), stats);

  const HermitianOperator h_mid = sys.hamiltonian().total(schedule.work_at(t + half));
  Frame moved = evolve_frame(frame, h_mid, dt, sys.units());

  const FrameLevels moved_levels(moved, sys.hamiltonian());
  const WeightFlow flow2{moved_levels, schedule, flow.ctx};
  p = flow2.advance(p, t + half, half, damped, unreachable);
  p = tidy_weights(std::move(p), stats);

  if (stats) {
    ++stats->steps;
    if (damped) ++stats->damping_events;
    stats->unreachable_exchange += unreachable;
    stats->max_frame_error = std::max(stats->max_frame_error, moved.orthonormality_error());
  }
  if (!p.allFinite()) throw SimulationError("weights became non-finite", t + dt);

  BipartiteSystem next = sys.with_state(Ensemble(std::move(moved), WeightVector(std::move(p))));
  return prepare(next, model, schedule, t + dt);
}

ThermoRecord record_of(const BipartiteSystem& sys, double t) {
  const Units& u = sys.units();
  const HermitianOperator h = sys.total_hamiltonian();
  const HermitianOperator rho = sys.density();
  const RealVector& p = sys.state().weights.values();
  const RealVector f1 = f1_vector(sys.state(), 1.0, u);
  const RealVector levels = expectations(sys.state().frame, h);
  const RateSplit& rates = sys.rates();
  const double beta = compound_inverse_temperature(sys);

  ThermoRecord r;
  r.t = t;
  r.E = energy(h, rho);
  const PowerExchange power = partial_power(sys);
  const HeatExchange heat = partial_heat(sys);
  const EntropyExchangeParts xi = partial_entropy_exchange(sys, heat);
  r.W_dot = power.total();
  r.Q_dot = heat.compound;
  r.S = 0;
  for (Index k = 0; k < p.size(); ++k)
    if (p(k) > 0) r.S -= u.k_B * p(k) * std::log(p(k));
  r.S_dot = -rates.total().dot(f1);
  r.Xi = beta * rates.exchange().dot(levels);
  r.Sigma = -rates.isolated().dot(f1);
  r.Theta = beta != 0.0 ? 1.0 / beta : std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < 3; ++k) {
    r.Q_ex[k] = heat.external[k];
    r.Q_int[k] = heat.internal[k];
    r.W_ex[k] = power.external[k];
    r.W_int[k] = power.internal[k];
    r.Xi_ex[k] = xi.external[k];
    r.Xi_int[k] = xi.internal[k];
  }
  const PartialEntropies parts = partial_entropies(rho, u);
  r.S1 = parts.S1;
  r.S2 = parts.S2;
  r.S_deficiency = parts.deficiency;
  r.S_dot_deficiency = entropy_rate_deficiency(sys).by_definition;
  r.Xi_ex_gap = xi.external_gap;
  r.Xi_int_sum = xi.internal_sum;

  const TemperatureSet& temps = sys.temps();
  r.T_box = temps.t_box;
  r.Theta1 = temps.theta1;
  r.Theta2 = temps.theta2;
  r.Theta12 = temps.theta12;
  r.isolated = sys.isolated();
  r.p_iso_norm = rates.isolated().cwiseAbs().maxCoeff();
  r.fI_spread = spread(f1);
  r.f_spread = spread(f1 + beta * levels);

  const std::string bad = first_non_finite(r);
  if (!bad.empty()) throw SimulationError("non-finite " + bad, t);
  return r;
}

Trajectory run(const Scenario& scenario) {
  scenario.validate();
  const BipartiteSystem& init = scenario.initial;
  Schedule schedule = scenario.schedule;
  if (schedule.a1.empty()) schedule.a1 = PiecewiseLinear::constant(init.work().a1);
  if (schedule.a2.empty()) schedule.a2 = PiecewiseLinear::constant(init.work().a2);
  if (schedule.a12.empty()) schedule.a12 = PiecewiseLinear::constant(init.work().a12);
  if (schedule.t_box.empty()) {
    schedule.t_box = PiecewiseLinear::constant(RealVector::Constant(1, init.temps().t_box));
  }
  std::vector<IsolationEvent> events = scenario.isolation_events;
  std::stable_sort(events.begin(), events.end(),
                   [](const IsolationEvent& a, const IsolationEvent& b) { return a.time < b.time; });

  const ConstitutiveModel& model = scenario.model;
  RunStatistics stats;
  std::vector<ThermoRecord> records;
  std::size_t next_event = 0;

  BipartiteSystem sys = init;
  // Events at t = 0 only set the initial flag.
  while (next_event < events.size() && events[next_event].time <= 0.0) {
    sys = sys.with_isolated(events[next_event++].isolated);
  }
  sys = prepare(sys, model, schedule, 0.0);
  records.push_back(record_of(sys, 0.0));

  const double dt = scenario.dt;
  const long n_steps =
      scenario.t_end > 0 ? long(std::ceil(scenario.t_end / dt - 1e-9)) : 0;
  auto advance = [&](double from, double to) {
    sys = step(sys, model, schedule, from, to - from, &stats);
    if (stats.damping_events > scenario.max_damping_events) {
      throw SimulationError("positivity damping budget exceeded; reduce dt", to);
    }
  };

  for (long n = 0; n < n_steps; ++n) {
    const double t1 = std::min(double(n + 1) * dt, scenario.t_end);
    double now = double(n) * dt;
    while (next_event < events.size() && events[next_event].time <= t1) {
      const IsolationEvent& e = events[next_event++];
      if (e.time > now) {
        advance(now, e.time);
        now = e.time;
      }
      if (e.isolated == sys.isolated()) continue;
      records.push_back(record_of(sys, now));
      sys = sys.with_isolated(e.isolated);
      sys = sys.with_rates(model_rates(sys, model, schedule.track_contact_temperature).rates);
      records.push_back(record_of(sys, now));
    }
    if (t1 > now) advance(now, t1);
    const bool due = (n + 1) % scenario.record_every == 0 || n + 1 == n_steps;
    if (due && records.back().t != t1) records.push_back(record_of(sys, t1));
  }
  return {std::move(records), std::move(sys), stats};
}

FirstLawAudit first_law_audit(const std::vector<ThermoRecord>& records) {
  FirstLawAudit out;
  const std::size_t n = records.size();
  if (n < 3) return out;
  auto uniform = [&](std::size_t i, std::size_t j) {  // records i..j equally spaced
    const double d = records[i + 1].t - records[i].t;
    if (!(d > 0)) return false;
    for (std::size_t k = i + 1; k < j; ++k) {
      const double dk = records[k + 1].t - records[k].t;
      if (std::abs(dk - d) > 1e-9 * d) return false;
      if (records[k].isolated != records[i].isolated) return false;
    }
    return records[j].isolated == records[i].isolated;
  };
  double e_scale = 1.0;
  for (const auto& r : records) e_scale = std::max(e_scale, std::abs(r.E));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!uniform(i - 1, i + 1)) continue;
    const double d = records[i + 1].t - records[i].t;
    const double fd = (records[i + 1].E - records[i - 1].E) / (2 * d);
    const double dev = std::abs(fd - (records[i].W_dot + records[i].Q_dot));
    out.max_deviation = std::max(out.max_deviation, dev);
    out.spacing = std::max(out.spacing, d);
    ++out.points;
    if (i + 2 < n && uniform(i - 1, i + 2)) {
      const double third = (records[i + 2].E - 3 * records[i + 1].E + 3 * records[i].E -
                            records[i - 1].E) / (d * d * d);
      out.third_derivative = std::max(out.third_derivative, std::abs(third));
    }
  }
  if (out.points == 0) return out;
  // Rounding in the central difference is of order eps |E| / spacing.
  out.threshold = 10 * out.spacing * out.spacing * out.third_derivative +
                  1e-13 * e_scale / out.spacing;
  out.passed = out.max_deviation <= out.threshold;
  return out;
}

}  // namespace qthermo
