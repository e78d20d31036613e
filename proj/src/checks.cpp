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

#include "qthermo/checks.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "qthermo/random.hpp"
#include "qthermo/simulate.hpp"

namespace qthermo {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 6> names{"appendix1", "appendix2", "klein",
                                               "secondlaw", "settings", "equilibrium"};

const std::vector<FactorDims> pair_dims{{2, 2}, {2, 3}, {3, 3}, {2, 4}};
// Total dimensions 2, 3, 4, 6.
const std::vector<FactorDims> total_dims{{1, 2}, {1, 3}, {2, 2}, {2, 3}};

json to_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ii = json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"re", re}, {"im", im}};
}

json to_json(const RealVector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json to_json(const Ensemble& e) {
  return {{"weights", to_json(e.weights.values())}, {"frame", to_json(e.frame.vectors())}};
}

json to_json(const BipartiteSystem& sys) {
  return {{"dimensions", {sys.dims().first, sys.dims().second}},
          {"H", to_json(sys.total_hamiltonian().matrix())},
          {"state", to_json(sys.state())},
          {"rates",
           {{"exchange", to_json(sys.rates().exchange())},
            {"isolated", to_json(sys.rates().isolated())}}},
          {"isolated", sys.isolated()}};
}

// Accumulates one property; the dump callback runs only for the first failure.
class Tally {
 public:
  Tally(std::string name, double tolerance, bool lower_bound = false) {
    r_.name = std::move(name);
    r_.tolerance = tolerance;
    r_.lower_bound = lower_bound;
    r_.worst = lower_bound ? INFINITY : 0.0;
  }

  void add(double value, const std::function<json()>& dump) {
    bool ok;
    if (r_.lower_bound) {
      ok = value >= -r_.tolerance;
      if (!(value >= r_.worst)) r_.worst = value;
    } else {
      ok = value <= r_.tolerance;
      if (!(value <= r_.worst)) r_.worst = value;
    }
    if (ok) {
      ++r_.passed;
      return;
    }
    if (r_.failed++ == 0 && dump) {
      json d = dump();
      d["value"] = std::isfinite(value) ? json(value) : json(std::to_string(value));
      r_.counterexample = d.dump(2);
    }
  }

  PropertyResult result() const { return r_; }

 private:
  PropertyResult r_;
};

struct Ctx {
  const CheckOptions& opt;
  long index = 0;

  Rng next() { return Rng(case_seed(opt.seed, std::uint64_t(index++))); }
};

ConstitutiveModel default_model(const CheckOptions& opt) {
  ConstitutiveModel m;
  if (opt.alpha) m.alpha = *opt.alpha;
  return m;
}

struct SystemShape {
  FactorDims dims;
  bool interaction = true;
  bool balanced_coupling = false;  // sum of the a12 generators over the parts is zero
  bool isolated = false;
};

BipartiteSystem random_system(Rng& rng, const SystemShape& shape, const ConstitutiveModel& model) {
  const FactorDims d = shape.dims;
  const Index n = d.total();
  PartHamiltonian h1{random_hermitian(rng, d.first), {random_hermitian(rng, d.first)}, {}};
  PartHamiltonian h2{random_hermitian(rng, d.second), {random_hermitian(rng, d.second)}, {}};
  PartHamiltonian h12{HermitianOperator::zero(n, d), {}, {}};
  Index n12 = 0;
  if (shape.interaction) {
    n12 = 1;
    h12.base = random_hermitian(rng, n, 0.5, d);
    h1.coupling.push_back(random_hermitian(rng, d.first));
    h2.coupling.push_back(random_hermitian(rng, d.second));
    if (shape.balanced_coupling) {
      h12.coupling.push_back(
          (embed_first(h1.coupling[0], d.second) + embed_second(d.first, h2.coupling[0])) * -1.0);
    } else {
      h12.coupling.push_back(random_hermitian(rng, n, 1.0, d));
    }
  }
  CompoundHamiltonian h(d, std::move(h1), std::move(h2), std::move(h12));

  WorkState w = WorkState::zero(1, 1, n12);
  w.a1(0) = random_uniform(rng, -1, 1);
  w.a2(0) = random_uniform(rng, -1, 1);
  w.a1_dot(0) = random_uniform(rng, -1, 1);
  w.a2_dot(0) = random_uniform(rng, -1, 1);
  if (n12) {
    w.a12(0) = random_uniform(rng, -1, 1);
    w.a12_dot(0) = random_uniform(rng, -1, 1);
  }
  TemperatureSet temps{random_uniform(rng, 0.5, 3), random_uniform(rng, 0.5, 3),
                       random_uniform(rng, 0.5, 3), random_uniform(rng, 0.5, 3)};
  BipartiteSystem sys(std::move(h), random_ensemble(rng, n, d, 1e-3), RateSplit::zero(n), w, temps,
                      shape.isolated);
  return sys.with_rates(model_rates(sys, model).rates);
}

double sigma_of(const BipartiteSystem& sys) {
  return -sys.rates().isolated().dot(f1_vector(sys.state(), 1.0, sys.units()));
}

// --- appendix1 ------------------------------------------------------------

void appendix1(Ctx& ctx, std::vector<PropertyResult>& out) {
  Tally traces("partial traces commute", 1e-12);
  Tally comm("partial trace of [A x I, B] vanishes", 1e-12);
  Tally reduced("Tr[A, Tr_2 B] vanishes", 1e-12);
  Tally product("Tr((A x I) B) = Tr_1(A Tr_2 B)", 1e-12);
  for (const FactorDims d : pair_dims) {
    for (long c = 0; c < ctx.opt.cases; ++c) {
      Rng rng = ctx.next();
      const ComplexMatrix a = random_complex(rng, d.first, d.first);
      const ComplexMatrix b = random_complex(rng, d.total(), d.total());
      const auto dump = [&] {
        return json{{"dimensions", {d.first, d.second}}, {"A", to_json(a)}, {"B", to_json(b)}};
      };
      const std::complex<double> tr = b.trace();
      const ComplexMatrix b1 = partial_trace(b, d, TracedFactor::second);
      const ComplexMatrix b2 = partial_trace(b, d, TracedFactor::first);
      traces.add(std::max(std::abs(b1.trace() - tr), std::abs(b2.trace() - tr)), dump);

      const ComplexMatrix a_big = tensor_product(a, ComplexMatrix::Identity(d.second, d.second));
      const ComplexMatrix c1 = partial_trace(commutator(a_big, b), d, TracedFactor::first);
      comm.add(max_abs(c1), dump);
      reduced.add(std::abs(commutator(a, b1).trace()), dump);
      product.add(std::abs(trace_product(a_big, b) - trace_product(a, b1)), dump);
    }
  }
  for (const Tally* t : {&traces, &comm, &reduced, &product}) out.push_back(t->result());
}

// --- appendix2 ------------------------------------------------------------

void appendix2(Ctx& ctx, std::vector<PropertyResult>& out) {
  Tally chain("chain on kappa-law data", 0.0);
  Tally external("Q1_ex/Theta1 + Q2_ex/Theta2 >= Q_ex/T_box", 1e-10, true);
  Tally hand("worked example 1.75 >= 2/3 >= 0.5", 1e-12);

  for (long c = 0; c < 4 * ctx.opt.cases; ++c) {
    Rng rng = ctx.next();
    const double t_box = random_uniform(rng, 0.2, 5);
    const int n_parts = 1 + int(rng() % 4);
    std::vector<HeatPart> parts;
    double q = 0;
    double lo = t_box, hi = t_box;  // range of part temperatures
    for (int j = 0; j < n_parts; ++j) {
      const double theta = random_uniform(rng, 0.2, 5);
      const double kappa = random_uniform(rng, 0.1, 3);
      parts.push_back({heat_conduction_law(kappa, theta, t_box), theta});
      q += parts.back().heat;
      lo = std::min(lo, theta);
      hi = std::max(hi, theta);
    }
    // A compound temperature on the same side of T_box as the net heat says.
    const double theta = q > 0 ? random_uniform(rng, lo, t_box) : random_uniform(rng, t_box, hi);
    const ExchangeChainReport r = entropy_exchange_inequality(parts, theta, t_box);
    const auto dump = [&] {
      json p = json::array();
      for (const auto& part : parts) p.push_back({part.heat, part.temperature});
      return json{{"parts", p}, {"Theta", theta}, {"T_box", t_box}};
    };
    chain.add(r.violation() ? 1.0 : 0.0, dump);

    const double th1 = random_uniform(rng, 0.2, 5), th2 = random_uniform(rng, 0.2, 5);
    const double q1 = heat_conduction_law(random_uniform(rng, 0.1, 3), th1, t_box);
    const double q2 = heat_conduction_law(random_uniform(rng, 0.1, 3), th2, t_box);
    external.add(q1 / th1 + q2 / th2 - (q1 + q2) / t_box, [&] {
      return json{{"Q1_ex", q1}, {"Q2_ex", q2}, {"Theta1", th1}, {"Theta2", th2}, {"T_box", t_box}};
    });
  }

  const std::vector<HeatPart> example{{2.0, 1.0}, {-1.0, 4.0}};
  const ExchangeChainReport r = entropy_exchange_inequality(example, 1.5, 2.0);
  const double dev = std::max({std::abs(r.parts_sum - 1.75), std::abs(r.compound - 2.0 / 3.0),
                               std::abs(r.reservoir - 0.5), r.violation() ? 1.0 : 0.0});
  hand.add(dev, [&] {
    return json{{"parts_sum", r.parts_sum}, {"compound", r.compound}, {"reservoir", r.reservoir}};
  });
  for (const Tally* t : {&chain, &external, &hand}) out.push_back(t->result());
}

// --- klein ----------------------------------------------------------------

void klein(Ctx& ctx, std::vector<PropertyResult>& out) {
  Tally deficiency("S1 + S2 - S >= 0", 1e-10, true);
  Tally trace_id("S_A = -k_B Tr(rho ln rho^A)", 1e-10);
  Tally pure("pure states: S = 0 and S1 = S2", 1e-10);
  Tally bell("Bell state: S = 0, S1 = S2 = ln 2", 1e-10);

  for (const FactorDims d : pair_dims) {
    for (long c = 0; c < ctx.opt.cases; ++c) {
      Rng rng = ctx.next();
      const HermitianOperator rho = random_density(rng, d);
      const PartialEntropies e = partial_entropies(rho);
      const auto dump = [&] {
        return json{{"dimensions", {d.first, d.second}}, {"rho", to_json(rho.matrix())}};
      };
      deficiency.add(e.deficiency, dump);
      trace_id.add(e.trace_identity_residual, dump);

      ComplexVector psi = random_complex(rng, d.total(), 1).col(0);
      psi.normalize();
      const HermitianOperator pure_rho(psi * psi.adjoint(), d);
      const PartialEntropies ep = partial_entropies(pure_rho);
      pure.add(std::max(std::abs(ep.S), std::abs(ep.S1 - ep.S2)), [&] {
        return json{{"dimensions", {d.first, d.second}}, {"rho", to_json(pure_rho.matrix())}};
      });
    }
  }

  ComplexVector bell_psi = ComplexVector::Zero(4);
  bell_psi(0) = bell_psi(3) = 1.0 / std::sqrt(2.0);
  const PartialEntropies eb =
      partial_entropies(HermitianOperator(bell_psi * bell_psi.adjoint(), FactorDims{2, 2}));
  bell.add(std::max({std::abs(eb.S), std::abs(eb.S1 - std::log(2.0)),
                     std::abs(eb.S2 - std::log(2.0))}),
           [&] { return json{{"S", eb.S}, {"S1", eb.S1}, {"S2", eb.S2}}; });
  for (const Tally* t : {&deficiency, &trace_id, &pure, &bell}) out.push_back(t->result());
}

// --- secondlaw ------------------------------------------------------------

double relative_change(double ref, double value, double floor) {
  return std::abs(value - ref) / std::max(std::abs(ref), floor);
}

void secondlaw(Ctx& ctx, std::vector<PropertyResult>& out) {
  const ConstitutiveModel model = default_model(ctx.opt);
  Tally production("Sigma >= 0 under the default model", 1e-12, true);
  Tally audit("rate constraints of the default model (relative)", 1e-12);
  Tally z_invariance("entropy rate, production and Theta independent of Z", 1e-10);

  for (const FactorDims d : total_dims) {
    for (long c = 0; c < ctx.opt.cases; ++c) {
      Rng rng = ctx.next();
      const BipartiteSystem sys = random_system(rng, {d}, model);
      const auto dump = [&] {
        json j = to_json(sys);
        j["alpha"] = model.alpha;
        return j;
      };
      production.add(sigma_of(sys), dump);

      const HermitianOperator h = sys.total_hamiltonian();
      const double beta = compound_inverse_temperature(sys);
      if (beta > 0.0) {
        const ConstraintAudit a = constraint_audit(sys.state(), sys.rates(), h, 1.0 / beta, 1.0);
        // The residuals are sums of |dp| |f| sized terms; near-degenerate levels
        // give large beta and large rates, so compare relative to that size.
        const RealVector f1 = f1_vector(sys.state(), 1.0);
        const RealVector f2 = beta * expectations(sys.state().frame, h);
        const double scale =
            std::max(1.0, (sys.rates().exchange().cwiseAbs() + sys.rates().isolated().cwiseAbs())
                                  .sum() *
                              (f1.cwiseAbs().maxCoeff() + f2.cwiseAbs().maxCoeff()));
        audit.add(std::max({std::abs(a.exchange_residual), std::abs(a.entropy_rate_residual),
                            std::abs(a.orthogonality)}) /
                      scale,
                  dump);
      }

      // Z sweep on an independent state with a generic exchange direction.
      const Ensemble ens = sys.state();
      const RealVector dp_ex = random_zero_sum(rng, d.total());
      const RateSplit rates(dp_ex, random_zero_sum(rng, d.total()));
      const double theta = random_uniform(rng, 0.5, 3);
      const double s0 = entropy_rate(ens, rates.total(), 1.0);
      const double p0 = entropy_production(ens, rates, h, theta, 1.0).value;
      const ContactTemperature t0 = contact_temperature_qm(ens, dp_ex, h, 1.0);
      double worst = 0;
      for (double z : {1e-3, 1e3}) {
        const double floor = 1e-12 * (1.0 + std::abs(std::log(z)));
        worst = std::max(worst, relative_change(s0, entropy_rate(ens, rates.total(), z), floor));
        worst = std::max(worst, relative_change(
                                    p0, entropy_production(ens, rates, h, theta, z).value, floor));
        const ContactTemperature tz = contact_temperature_qm(ens, dp_ex, h, z);
        if (t0.defined() != tz.defined()) {
          worst = INFINITY;
        } else if (t0.defined()) {
          worst = std::max(worst, relative_change(t0.value, tz.value, floor));
        }
      }
      z_invariance.add(worst, [&] {
        return json{{"state", to_json(ens)},
                    {"H", to_json(h.matrix())},
                    {"exchange", to_json(dp_ex)},
                    {"Theta", theta}};
      });
    }
  }
  for (const Tally* t : {&production, &audit, &z_invariance}) out.push_back(t->result());
}

// --- settings -------------------------------------------------------------

void settings(Ctx& ctx, std::vector<PropertyResult>& out) {
  const ConstitutiveModel model = default_model(ctx.opt);
  ConstitutiveModel inert = model;
  inert.iso_mode = IsoMode::inert_partition;

  Tally additivity("Q1 + Q2 + Q12 = Q", 1e-10);
  Tally internal_heat("internal heats sum to zero", 1e-10);
  Tally iso_heat("Tr(H rho_iso) = 0", 1e-10);
  Tally eom("sub-system equations of motion", 1e-10);
  Tally power_routes("internal power: parts vs total generator", 1e-10);
  Tally balanced("balanced coupling: -W1_int = W2_int + W12_int", 1e-10);
  Tally isolation("isolation keeps Sigma and removes Xi", 1e-12);
  Tally no_interaction("H12 = 0: inert partition", 1e-10);
  Tally no_interaction_inert("H12 = 0, Theta1 != Theta2: internal heats vanish", 1e-10);
  Tally deficiency_routes("entropy-rate deficiency: both routes agree", 1e-10);
  Tally product_deficiency("H12 = 0, product state: no entropy-rate deficiency", 1e-10);

  for (const FactorDims d : pair_dims) {
    for (long c = 0; c < ctx.opt.cases; ++c) {
      Rng rng = ctx.next();
      const BipartiteSystem sys = random_system(rng, {d}, model);
      const auto dump = [&] { return to_json(sys); };
      const HeatExchange heat = partial_heat(sys);
      additivity.add(std::abs(heat.additivity_residual), dump);
      internal_heat.add(std::abs(heat.internal_sum), dump);
      iso_heat.add(std::abs(heat_rate(sys.total_hamiltonian(), sys.isolated_propagator())), dump);
      eom.add(std::max(subsystem_eom_residual(sys, Part::one), subsystem_eom_residual(sys, Part::two)),
              dump);
      const PowerExchange power = partial_power(sys);
      power_routes.add(std::abs(power.internal_total - power.coupling_power_direct), dump);

      const EntropyRateDeficiency def = entropy_rate_deficiency(sys);
      const double scale = std::max({1.0, std::abs(def.s1_dot), std::abs(def.s2_dot),
                                     std::abs(def.s_dot)});
      deficiency_routes.add(std::abs(def.by_definition - def.explicit_form) / scale, dump);

      // Isolating the same state: production unchanged, exchange gone.
      const BipartiteSystem iso = sys.with_isolated(true).with_rates(
          model_rates(sys.with_isolated(true), model).rates);
      const double xi = entropy_exchange(iso.state().frame, iso.rates().exchange(),
                                         iso.total_hamiltonian(), 1.0);
      isolation.add(std::max(std::abs(sigma_of(iso) - sigma_of(sys)), std::abs(xi)), dump);

      Rng rng_v = ctx.next();
      const BipartiteSystem bsys = random_system(rng_v, {d, true, true}, model);
      const PowerExchange pv = partial_power(bsys);
      balanced.add(std::max(std::abs(pv.internal_total), std::abs(pv.coupling_power_direct)),
                   [&] { return to_json(bsys); });

      Rng rng_0 = ctx.next();
      const BipartiteSystem free_sys = random_system(rng_0, {d, false}, model);
      const HeatExchange h0 = partial_heat(free_sys);
      no_interaction.add(
          std::max(std::abs(h0.internal[2]), std::abs(h0.internal[0] + h0.internal[1])),
          [&] { return to_json(free_sys); });
      const BipartiteSystem inert_sys = free_sys.with_rates(model_rates(free_sys, inert).rates);
      const HeatExchange hi = partial_heat(inert_sys);
      no_interaction_inert.add(
          std::max({std::abs(hi.internal[0]), std::abs(hi.internal[1]), std::abs(hi.internal[2])}),
          [&] { return to_json(inert_sys); });

      // Product state on a product frame.
      const Ensemble e1 = random_ensemble(rng_0, d.first, std::nullopt, 1e-3);
      const Ensemble e2 = random_ensemble(rng_0, d.second, std::nullopt, 1e-3);
      RealVector p(d.total());
      for (Index k = 0; k < d.first; ++k)
        for (Index l = 0; l < d.second; ++l) p(k * d.second + l) = e1.weights[k] * e2.weights[l];
      const BipartiteSystem prod_sys0 = free_sys.with_state(
          Ensemble(product_frame(e1.frame, e2.frame), WeightVector(p / p.sum())));
      const BipartiteSystem prod_sys = prod_sys0.with_rates(model_rates(prod_sys0, model).rates);
      const EntropyRateDeficiency pd = entropy_rate_deficiency(prod_sys);
      const double pscale = std::max({1.0, std::abs(pd.s1_dot), std::abs(pd.s2_dot),
                                      std::abs(pd.s_dot)});
      product_deficiency.add(
          std::max(std::abs(pd.by_definition), std::abs(pd.explicit_form)) / pscale,
                             [&] { return to_json(prod_sys); });
    }
  }
  for (const Tally* t : {&additivity, &internal_heat, &iso_heat, &eom, &power_routes, &balanced,
                         &isolation, &no_interaction, &no_interaction_inert, &deficiency_routes,
                         &product_deficiency})
    out.push_back(t->result());
}

// --- equilibrium ----------------------------------------------------------

void equilibrium(Ctx& ctx, std::vector<PropertyResult>& out) {
  const ConstitutiveModel model = default_model(ctx.opt);
  Tally micro_f1("micro-canonical: f^I = 0 with Z = N", 1e-12);
  Tally micro_fixed("micro-canonical, isolated: |p_dot| = 0", 1e-12);
  Tally canon_f("canonical: f = 0", 1e-10);
  Tally canon_comm("canonical: [H, rho] = 0", 1e-12);
  Tally canon_fixed("canonical, T_box = Theta: |p_dot| = 0", 1e-12);
  Tally canon_report("canonical with equal temperatures passes every condition", 0.0);

  for (const FactorDims d : total_dims) {
    for (long c = 0; c < ctx.opt.cases; ++c) {
      Rng rng = ctx.next();
      const BipartiteSystem base = random_system(rng, {d, true, false, true}, model);
      const Ensemble micro = microcanonical(random_frame(rng, d.total(), d));
      micro_f1.add(f1_vector(micro, double(d.total())).cwiseAbs().maxCoeff(),
                   [&] { return json{{"state", to_json(micro)}}; });
      const BipartiteSystem ms0 = base.with_state(micro);
      const BipartiteSystem ms = ms0.with_rates(model_rates(ms0, model).rates);
      micro_fixed.add(ms.rates().total().norm(), [&] { return to_json(ms); });

      const HermitianOperator h = base.total_hamiltonian();
      const double theta = random_uniform(rng, 0.5, 3);
      const CanonicalState cs = canonical(h, theta);
      canon_f.add(f_vector(cs.ensemble, h, theta, cs.Z).cwiseAbs().maxCoeff(), [&] {
        return json{{"H", to_json(h.matrix())}, {"Theta", theta}, {"state", to_json(cs.ensemble)}};
      });
      canon_comm.add(max_abs(commutator(h, density_of(cs.ensemble))), [&] {
        return json{{"H", to_json(h.matrix())}, {"Theta", theta}};
      });

      const BipartiteSystem cs0 = base.with_isolated(false).with_state(cs.ensemble).with_temperatures(
          TemperatureSet{theta, theta, theta, theta});
      const BipartiteSystem cs1 = cs0.with_rates(model_rates(cs0, model).rates);
      canon_fixed.add(cs1.rates().total().norm(), [&] { return to_json(cs1); });

      WorkState still = base.work();
      still.a1_dot.setZero();
      still.a2_dot.setZero();
      still.a12_dot.setZero();
      const BipartiteSystem eq = cs0.with_work(still).with_rates(RateSplit::zero(d.total()));
      const EquilibriumReport rep = equilibrium_check(eq);
      canon_report.add(rep.all() ? 0.0 : 1.0, [&] {
        json j = to_json(eq);
        j["rho_dot_norm"] = rep.rho_dot_norm;
        return j;
      });
    }
  }
  for (const Tally* t : {&micro_f1, &micro_fixed, &canon_f, &canon_comm, &canon_fixed,
                         &canon_report})
    out.push_back(t->result());
}

}  // namespace

std::optional<Suite> suite_from_name(std::string_view name) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return Suite(i);
  return std::nullopt;
}

std::string_view suite_name(Suite suite) { return names[std::size_t(suite)]; }

std::vector<std::string_view> suite_names() { return {names.begin(), names.end()}; }

bool CheckReport::passed() const {
  for (const auto& p : properties)
    if (!p.ok()) return false;
  return !properties.empty();
}

std::string CheckReport::text() const {
  std::ostringstream os;
  os << "suite " << suite_name(suite) << " (seed " << seed << ")\n";
  for (const auto& p : properties) {
    os << (p.ok() ? "  pass " : "  FAIL ") << p.name << ": " << p.passed << "/"
       << p.passed + p.failed << " cases, " << (p.lower_bound ? "min " : "max ") << p.worst
       << (p.lower_bound ? " (bound -" : " (tol ") << p.tolerance << ")\n";
  }
  for (const auto& p : properties) {
    if (p.ok() || p.counterexample.empty()) continue;
    os << "counterexample for \"" << p.name << "\":\n" << p.counterexample << "\n";
  }
  return os.str();
}

CheckReport run_check(Suite suite, const CheckOptions& options) {
  if (options.cases < 1) throw Error("check: case count must be positive");
  CheckReport report;
  report.suite = suite;
  report.seed = options.seed;
  Ctx ctx{options};
  switch (suite) {
    case Suite::appendix1: appendix1(ctx, report.properties); break;
    case Suite::appendix2: appendix2(ctx, report.properties); break;
    case Suite::klein: klein(ctx, report.properties); break;
    case Suite::secondlaw: secondlaw(ctx, report.properties); break;
    case Suite::settings: settings(ctx, report.properties); break;
    case Suite::equilibrium: equilibrium(ctx, report.properties); break;
  }
  return report;
}

}  // namespace qthermo
