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

// Time integration of the modified von Neumann dynamics. Each step is a
// Strang splitting: half a weight step (RK4, frame fixed), a full unitary
// frame step with the mid-step Hamiltonian, and another half weight step.

#include <optional>
#include <string>
#include <vector>

#include "qthermo/bipartite.hpp"
#include "qthermo/constitutive.hpp"
#include "qthermo/record.hpp"

namespace qthermo {

/// Piecewise-linear vector-valued function of time, constant outside its knots.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  /// Knot times must be strictly increasing; all values share one length.
  PiecewiseLinear(std::vector<double> times, std::vector<RealVector> values);

  static PiecewiseLinear constant(RealVector value);

  bool empty() const { return times_.empty(); }
  Index width() const { return values_.empty() ? 0 : values_.front().size(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<RealVector>& values() const { return values_; }

  RealVector value(double t) const;
  /// Slope of the segment [t_i, t_{i+1}) containing t; zero outside the knots.
  RealVector slope(double t) const;

  bool operator==(const PiecewiseLinear& o) const;

 private:
  std::vector<double> times_;
  std::vector<RealVector> values_;
};

/// Prescribed work variables and environment temperature.
struct Schedule {
  PiecewiseLinear a1, a2, a12;
  /// Environment temperature T_box(t); ignored while tracking.
  PiecewiseLinear t_box;
  /// T_box(t) := Theta(t) at every evaluation.
  bool track_contact_temperature = false;

  WorkState work_at(double t) const;
  double t_box_at(double t) const;
};

struct IsolationEvent {
  double time = 0;
  bool isolated = true;
  bool operator==(const IsolationEvent&) const = default;
};

struct Scenario {
  std::string name;
  BipartiteSystem initial;
  ConstitutiveModel model;
  Schedule schedule;
  std::vector<IsolationEvent> isolation_events;
  double t_end = 0;
  double dt = 0.01;
  int record_every = 1;
  long max_damping_events = 1000;

  void validate() const;
};

struct RunStatistics {
  long steps = 0;
  long damping_events = 0;
  long weight_repairs = 0;
  long unreachable_exchange = 0;  ///< rate evaluations with no admissible exchange direction
  double max_frame_error = 0;
  double max_weight_drift = 0;    ///< largest |sum p - 1| before repair
};

struct Trajectory {
  std::vector<ThermoRecord> records;
  BipartiteSystem final_state;
  RunStatistics stats;
};

/// The default model's rates at a snapshot: the compound contact temperature
/// is the state's own (inverse_contact_temperature), exchange follows the kappa
/// law towards sys.temps().t_box and vanishes while isolated. `track` sets
/// T_box := Theta.
struct ModelRates {
  RateSplit rates;
  bool exchange_unreachable = false;
};

ModelRates model_rates(const BipartiteSystem& sys, const ConstitutiveModel& model,
                       bool track = false);

/// One splitting step from t to t + dt. The returned snapshot carries the
/// schedule's work variables and T_box at t + dt and the undamped model rates
/// there. dt = 0 returns `sys` unchanged.
BipartiteSystem step(const BipartiteSystem& sys, const ConstitutiveModel& model,
                     const Schedule& schedule, double t, double dt,
                     RunStatistics* stats = nullptr);

/// Applies the schedule at t and recomputes the model rates.
BipartiteSystem prepare(const BipartiteSystem& sys, const ConstitutiveModel& model,
                        const Schedule& schedule, double t);

/// Full bookkeeping for one snapshot. Throws SimulationError on non-finite values.
ThermoRecord record_of(const BipartiteSystem& sys, double t);

Trajectory run(const Scenario& scenario);

struct FirstLawAudit {
  std::size_t points = 0;       ///< interior points on a uniform grid
  double max_deviation = 0;     ///< max |central dE/dt - (W_dot + Q_dot)|
  double third_derivative = 0;  ///< max |d3E/dt3| estimate
  double spacing = 0;
  double threshold = 0;
  bool passed = false;
};

FirstLawAudit first_law_audit(const std::vector<ThermoRecord>& records);

}  // namespace qthermo
