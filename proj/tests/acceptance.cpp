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

// Runs every acceptance criterion and prints one PASS/FAIL line per
// criterion. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "qthermo/checks.hpp"
#include "qthermo/random.hpp"
#include "qthermo/report.hpp"
#include "qthermo/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace qthermo;

namespace {

const fs::path scenario_dir = QTHERMO_SCENARIO_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool suite_passes(Suite s, long cases, std::string& detail) {
  CheckOptions opt;
  opt.seed = 20261015;
  opt.cases = cases;
  const CheckReport r = run_check(s, opt);
  long n = 0;
  for (const auto& p : r.properties) n += p.passed + p.failed;
  if (!r.passed()) {
    detail += std::string(suite_name(s)) + " suite failed:\n" + r.text();
    return false;
  }
  detail += std::string(suite_name(s)) + ": " + std::to_string(r.properties.size()) +
            " properties, " + std::to_string(n) + " cases";
  return true;
}

Trajectory run_file(const std::string& name) { return run(load_scenario(scenario_dir / (name + ".json"))); }

std::vector<std::pair<std::string, Trajectory>> bundled() {
  std::vector<std::pair<std::string, Trajectory>> out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(scenario_dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.emplace_back(f.stem().string(), run(load_scenario(f)));
  return out;
}

Outcome criterion1() {
  Outcome o;
  o.pass = suite_passes(Suite::appendix1, 500, o.detail);
  return o;
}

Outcome criterion2() {
  Outcome o;
  o.pass = suite_passes(Suite::klein, 500, o.detail);
  return o;
}

Outcome criterion3(const std::vector<std::pair<std::string, Trajectory>>& runs) {
  Outcome o;
  o.pass = suite_passes(Suite::secondlaw, 1000, o.detail);
  double worst = INFINITY;
  for (const auto& [name, traj] : runs)
    for (const auto& r : traj.records) worst = std::min(worst, r.Sigma);
  o.detail += fmt("; min Sigma over bundled trajectories %.3g", worst);
  o.pass = o.pass && worst >= -1e-10;
  return o;
}

Outcome criterion4(const std::vector<std::pair<std::string, Trajectory>>& runs) {
  Outcome o;
  o.pass = suite_passes(Suite::settings, 500, o.detail);
  double additivity = 0, internal = 0, inert = 0;
  for (const auto& [name, traj] : runs) {
    for (const auto& r : traj.records) {
      double q = 0, qi = 0;
      for (int k = 0; k < 3; ++k) {
        q += r.Q_ex[k] + r.Q_int[k];
        qi += r.Q_int[k];
      }
      additivity = std::max(additivity, std::abs(q - r.Q_dot));
      internal = std::max(internal, std::abs(qi));
      if (name == "inert_partition")
        for (int k = 0; k < 3; ++k) inert = std::max(inert, std::abs(r.Q_int[k]));
    }
  }
  o.detail += fmt("; trajectories: additivity %.2g, internal sum %.2g, H12 = 0 internal heats %.2g",
                  additivity, internal, inert);
  o.pass = o.pass && additivity <= 1e-10 && internal <= 1e-10 && inert <= 1e-10;
  return o;
}

Outcome criterion5() {
  Outcome o;
  o.pass = suite_passes(Suite::equilibrium, 500, o.detail);
  return o;
}

Outcome criterion6() {
  const auto start = std::chrono::steady_clock::now();
  const Scenario sc = load_scenario(scenario_dir / "two_level_reservoir.json");
  const Trajectory traj = run(sc);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double kappa = sc.model.conduction.kappa_ex;
  const double e = std::exp(-1.0);
  const RealVector& p = traj.final_state.state().weights.values();
  const double dp = std::max(std::abs(p(0) - 1 / (1 + e)), std::abs(p(1) - e / (1 + e)));
  const auto beta = inverse_contact_temperature(traj.final_state.state(),
                                                traj.final_state.total_hamiltonian());
  const double theta = beta && *beta > 0 ? 1.0 / *beta : INFINITY;
  Outcome o;
  o.pass = std::abs(sc.t_end * kappa - 50) < 1e-12 && dp <= 1e-4 &&
           std::abs(theta - 1.0) <= 1e-3 && seconds < 5;
  o.detail = fmt("weight error %.2g, Theta %.10g, ", dp, theta) + fmt("runtime %.2f s", seconds);
  return o;
}

Outcome criterion7() {
  Scenario sc = load_scenario(scenario_dir / "work_ramp.json");
  const FirstLawAudit coarse = first_law_audit(run(sc).records);
  sc.dt /= 2;
  const FirstLawAudit fine = first_law_audit(run(sc).records);
  const double ratio = coarse.max_deviation / fine.max_deviation;
  Outcome o;
  o.pass = coarse.passed && fine.passed && std::abs(ratio - 4.0) <= 0.5;
  o.detail = fmt("deviation %.3g -> %.3g, ratio %.3f", coarse.max_deviation, fine.max_deviation,
                 ratio);
  return o;
}

Outcome criterion8() {
  const Trajectory traj = run_file("theta_tracking");
  const auto& rs = traj.records;
  double drift = 0, lo = INFINITY, hi = -INFINITY;
  for (const auto& r : rs) {
    drift = std::max(drift, std::abs(r.E - rs.front().E));
    lo = std::min(lo, r.Theta);
    hi = std::max(hi, r.Theta);
  }
  const double variation = (hi - lo) / std::abs(rs.front().Theta);
  Outcome o;
  o.pass = drift < 1e-8 && variation >= 0.1 && std::isfinite(variation);
  o.detail = fmt("max |E - E(0)| %.2g, Theta varies by %.1f%%", drift, 100 * variation);
  return o;
}

Outcome criterion9(const std::vector<std::pair<std::string, Trajectory>>& runs) {
  Outcome o;
  o.pass = suite_passes(Suite::appendix2, 500, o.detail);
  long violations = 0, rows = 0;
  for (const auto& [name, traj] : runs) {
    const TrajectoryReport rep = analyze(traj.records);
    violations += rep.chain_violations;
    rows += long(rep.rows.size()) - rep.chain_skipped;
  }
  const HeatPart parts[] = {{2.0, 1.0}, {-1.0, 4.0}};
  const ExchangeChainReport hand = entropy_exchange_inequality(parts, 1.5, 2.0);
  const bool hand_ok = std::abs(hand.parts_sum - 1.75) < 1e-12 &&
                       std::abs(hand.compound - 2.0 / 3.0) < 1e-12 &&
                       std::abs(hand.reservoir - 0.5) < 1e-12 && !hand.violation();
  o.detail += "; " + std::to_string(violations) + " violations in " + std::to_string(rows) +
              " trajectory rows; " + fmt("example %.4g >= %.4g >= %.4g", hand.parts_sum,
                                         hand.compound, hand.reservoir);
  o.pass = o.pass && violations == 0 && hand_ok;
  return o;
}

Outcome criterion10() {
  double worst = 0;
  long n = 0;
  for (Index dim : {2, 3, 4, 6}) {
    for (int c = 0; c < 250; ++c) {
      Rng rng(case_seed(99, std::uint64_t(dim * 1000 + c)));
      const Ensemble ens = random_ensemble(rng, dim, std::nullopt, 1e-3);
      const HermitianOperator h = random_hermitian(rng, dim);
      const RateSplit rates(random_zero_sum(rng, dim), random_zero_sum(rng, dim));
      const double theta = random_uniform(rng, 0.5, 3);
      const double s1 = entropy_rate(ens, rates.total(), 1.0);
      const double p1 = entropy_production(ens, rates, h, theta, 1.0).value;
      const ContactTemperature t1 = contact_temperature_qm(ens, rates.exchange(), h, 1.0);
      for (double z : {1e-3, 1e3}) {
        const auto rel = [](double a, double b) { return std::abs(b - a) / std::abs(a); };
        worst = std::max(worst, rel(s1, entropy_rate(ens, rates.total(), z)));
        worst = std::max(worst, rel(p1, entropy_production(ens, rates, h, theta, z).value));
        const ContactTemperature tz = contact_temperature_qm(ens, rates.exchange(), h, z);
        if (t1.defined() != tz.defined()) worst = INFINITY;
        if (t1.defined() && tz.defined()) worst = std::max(worst, rel(t1.value, tz.value));
      }
      ++n;
    }
  }
  Outcome o;
  o.pass = worst <= 1e-10;
  o.detail = std::to_string(n) + " random states, worst relative change " + fmt("%.2g", worst);
  return o;
}

Outcome criterion11() {
  const Scenario sc = load_scenario(scenario_dir / "isolation_event.json");
  const Trajectory traj = run(sc);
  const double te = sc.isolation_events.at(0).time;
  const ThermoRecord* pre = nullptr;
  const ThermoRecord* post = nullptr;
  double xi_after = 0;
  for (const auto& r : traj.records) {
    if (r.t == te && !r.isolated) pre = &r;
    if (r.t == te && r.isolated) post = &r;
    if (r.isolated) xi_after = std::max(xi_after, std::abs(r.Xi));
  }
  Outcome o;
  if (!pre || !post) {
    o.detail = "no pre/post records at the event";
    return o;
  }
  const double jump = std::abs(post->Sigma - pre->Sigma);
  o.pass = jump < 1e-8 && std::abs(pre->Xi) > 1e-6 && xi_after <= 1e-12;
  o.detail = fmt("Sigma jump %.2g, Xi %.3g before, max |Xi| %.2g after; ", jump, pre->Xi,
                 xi_after);

  // Balanced coupling generators: the internal power budget closes.
  CheckOptions opt;
  opt.seed = 7;
  opt.cases = 500;
  const CheckReport r = run_check(Suite::settings, opt);
  bool budget = false;
  for (const auto& p : r.properties) {
    if (p.name.find("balanced coupling") != std::string::npos) {
      budget = p.ok() && p.passed > 0;
      o.detail += fmt("balanced-coupling power residual %.2g", p.worst);
    }
  }
  o.pass = o.pass && budget;
  return o;
}

}  // namespace

int main() {
  const auto runs = bundled();
  const std::vector<std::function<Outcome()>> criteria{
      criterion1,
      criterion2,
      [&] { return criterion3(runs); },
      [&] { return criterion4(runs); },
      criterion5,
      criterion6,
      criterion7,
      criterion8,
      [&] { return criterion9(runs); },
      criterion10,
      criterion11,
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
