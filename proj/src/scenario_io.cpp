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

#include "qthermo/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace qthermo {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError(path, what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) fail(join(path, item.key()), "unknown field");
  }
}

const json* member(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double number_or(const json& obj, const char* key, const std::string& path, double fallback) {
  const json* j = member(obj, key);
  return j ? number(*j, join(path, key)) : fallback;
}

long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

Eigen::MatrixXd real_rows(const json& j, const std::string& path, Index n) {
  array(j, path);
  if (Index(j.size()) != n) {
    fail(path, "expected " + std::to_string(n) + " rows, got " + std::to_string(j.size()));
  }
  Eigen::MatrixXd m(n, n);
  for (Index r = 0; r < n; ++r) {
    const std::string row_path = at_index(path, std::size_t(r));
    const json& row = array(j[std::size_t(r)], row_path);
    if (Index(row.size()) != n) {
      fail(row_path, "expected " + std::to_string(n) + " entries, got " + std::to_string(row.size()));
    }
    for (Index c = 0; c < n; ++c) m(r, c) = number(row[std::size_t(c)], at_index(row_path, std::size_t(c)));
  }
  return m;
}

ComplexMatrix complex_matrix(const json& j, const std::string& path, Index n) {
  if (j.is_array()) return real_rows(j, path, n).cast<std::complex<double>>();
  check_keys(j, path, {"re", "im"});
  const json* re = member(j, "re");
  if (!re) fail(join(path, "re"), "missing field");
  ComplexMatrix m = real_rows(*re, join(path, "re"), n).cast<std::complex<double>>();
  if (const json* im = member(j, "im")) {
    // Assigned rather than added so that signed zeros survive a round trip.
    m.imag() = real_rows(*im, join(path, "im"), n);
  }
  return m;
}

HermitianOperator hermitian(const json& j, const std::string& path, Index n) {
  try {
    return HermitianOperator(complex_matrix(j, path, n));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::vector<HermitianOperator> hermitian_list(const json* j, const std::string& path, Index n) {
  std::vector<HermitianOperator> out;
  if (!j) return out;
  array(*j, path);
  for (std::size_t i = 0; i < j->size(); ++i) out.push_back(hermitian((*j)[i], at_index(path, i), n));
  return out;
}

PartHamiltonian part(const json* j, const std::string& path, Index n, const char* own_key) {
  PartHamiltonian out{HermitianOperator::zero(n), {}, {}};
  if (!j) return out;
  if (own_key) {
    check_keys(*j, path, {"base", own_key, "a12"});
  } else {
    check_keys(*j, path, {"base", "a12"});
  }
  if (const json* base = member(*j, "base")) out.base = hermitian(*base, join(path, "base"), n);
  if (own_key) out.own = hermitian_list(member(*j, own_key), join(path, own_key), n);
  out.coupling = hermitian_list(member(*j, "a12"), join(path, "a12"), n);
  return out;
}

// [[t, v_1, ..., v_w], ...]
PiecewiseLinear knots(const json& j, const std::string& path, Index width) {
  array(j, path);
  if (j.empty()) fail(path, "needs at least one knot");
  std::vector<double> times;
  std::vector<RealVector> values;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = at_index(path, i);
    const json& knot = array(j[i], p);
    if (Index(knot.size()) != width + 1) {
      fail(p, "expected [t, " + std::to_string(width) + " values], got " +
                  std::to_string(knot.size()) + " entries");
    }
    times.push_back(number(knot[0], at_index(p, 0)));
    RealVector v(width);
    for (Index k = 0; k < width; ++k) v(k) = number(knot[std::size_t(k + 1)], at_index(p, std::size_t(k + 1)));
    values.push_back(v);
  }
  try {
    return PiecewiseLinear(std::move(times), std::move(values));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

json matrix_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ir = json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"re", re}, {"im", im}};
}

json list_json(const std::vector<HermitianOperator>& ops) {
  json out = json::array();
  for (const auto& op : ops) out.push_back(matrix_json(op.matrix()));
  return out;
}

json knots_json(const PiecewiseLinear& s) {
  json out = json::array();
  for (std::size_t i = 0; i < s.times().size(); ++i) {
    json knot = json::array({s.times()[i]});
    for (Index k = 0; k < s.values()[i].size(); ++k) knot.push_back(s.values()[i](k));
    out.push_back(knot);
  }
  return out;
}

const char* iso_mode_name(IsoMode m) {
  return m == IsoMode::pairwise ? "pairwise" : "inert_partition";
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(source, std::string("not valid JSON: ") + e.what());
  }
  check_keys(doc, "", {"name", "constants", "dimensions", "hamiltonian", "initial", "temperatures",
                       "schedule", "model", "run"});

  std::string name = "scenario";
  if (const json* n = member(doc, "name")) {
    if (!n->is_string()) fail("name", "expected a string");
    name = n->get<std::string>();
  }

  Units units;
  if (const json* c = member(doc, "constants")) {
    check_keys(*c, "constants", {"hbar", "k_B"});
    units.hbar = number_or(*c, "hbar", "constants", 1.0);
    units.k_B = number_or(*c, "k_B", "constants", 1.0);
    if (!(units.hbar > 0) || !(units.k_B > 0)) fail("constants", "hbar and k_B must be positive");
  }

  const json* dims_j = member(doc, "dimensions");
  if (!dims_j) fail("dimensions", "missing field");
  check_keys(*dims_j, "dimensions", {"d1", "d2"});
  FactorDims dims;
  for (auto [key, slot] : {std::pair{"d1", &dims.first}, std::pair{"d2", &dims.second}}) {
    const json* d = member(*dims_j, key);
    if (!d) fail(join("dimensions", key), "missing field");
    *slot = integer(*d, join("dimensions", key));
    if (*slot < 1) fail(join("dimensions", key), "must be at least 1");
  }
  if (dims.total() > max_dimension()) {
    fail("dimensions", "compound dimension " + std::to_string(dims.total()) +
                           " exceeds the configured limit " + std::to_string(max_dimension()));
  }

  const json empty_object = json::object();
  const json* ham = member(doc, "hamiltonian");
  if (!ham) ham = &empty_object;
  check_keys(*ham, "hamiltonian", {"H1", "H2", "H12"});
  PartHamiltonian p1 = part(member(*ham, "H1"), "hamiltonian.H1", dims.first, "a1");
  PartHamiltonian p2 = part(member(*ham, "H2"), "hamiltonian.H2", dims.second, "a2");
  PartHamiltonian p12 = part(member(*ham, "H12"), "hamiltonian.H12", dims.total(), nullptr);
  std::optional<CompoundHamiltonian> h;
  try {
    h.emplace(dims, std::move(p1), std::move(p2), std::move(p12));
  } catch (const Error& e) {
    fail("hamiltonian", e.what());
  }

  Schedule schedule;
  if (const json* s = member(doc, "schedule")) {
    check_keys(*s, "schedule", {"a1", "a2", "a12"});
    if (const json* a = member(*s, "a1")) schedule.a1 = knots(*a, "schedule.a1", h->own_count(Part::one));
    if (const json* a = member(*s, "a2")) schedule.a2 = knots(*a, "schedule.a2", h->own_count(Part::two));
    if (const json* a = member(*s, "a12")) schedule.a12 = knots(*a, "schedule.a12", h->coupling_count());
  }
  WorkState work = WorkState::zero(h->own_count(Part::one), h->own_count(Part::two),
                                   h->coupling_count());
  if (!schedule.a1.empty()) work.a1 = schedule.a1.value(0.0), work.a1_dot = schedule.a1.slope(0.0);
  if (!schedule.a2.empty()) work.a2 = schedule.a2.value(0.0), work.a2_dot = schedule.a2.slope(0.0);
  if (!schedule.a12.empty()) work.a12 = schedule.a12.value(0.0), work.a12_dot = schedule.a12.slope(0.0);

  TemperatureSet temps;
  if (const json* t = member(doc, "temperatures")) {
    check_keys(*t, "temperatures", {"Theta1", "Theta2", "Theta12", "T_box"});
    temps.theta1 = number_or(*t, "Theta1", "temperatures", 1.0);
    temps.theta2 = number_or(*t, "Theta2", "temperatures", 1.0);
    temps.theta12 = number_or(*t, "Theta12", "temperatures", 1.0);
    if (const json* box = member(*t, "T_box")) {
      if (box->is_string()) {
        if (box->get<std::string>() != "track") fail("temperatures.T_box", "expected a number, knots or \"track\"");
        schedule.track_contact_temperature = true;
      } else if (box->is_array()) {
        schedule.t_box = knots(*box, "temperatures.T_box", 1);
        temps.t_box = schedule.t_box.value(0.0)(0);
      } else {
        temps.t_box = number(*box, "temperatures.T_box");
        schedule.t_box = PiecewiseLinear::constant(RealVector::Constant(1, temps.t_box));
      }
    }
  }
  try {
    temps.validate();
  } catch (const Error& e) {
    fail("temperatures", e.what());
  }

  const HermitianOperator h0 = h->total(work);
  const json* init = member(doc, "initial");
  if (!init) fail("initial", "missing field");
  check_keys(*init, "initial", {"weights", "frame"});
  std::optional<Frame> frame;
  const json* frame_j = member(*init, "frame");
  bool eigen_frame = true;
  if (frame_j && frame_j->is_string()) {
    const std::string f = frame_j->get<std::string>();
    if (f == "standard") {
      frame.emplace(Frame::standard(dims.total(), dims));
      eigen_frame = false;
    } else if (f != "eigen") {
      fail("initial.frame", "expected \"eigen\", \"standard\" or a matrix");
    }
  } else if (frame_j) {
    eigen_frame = false;
    try {
      frame.emplace(complex_matrix(*frame_j, "initial.frame", dims.total()), dims);
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      fail("initial.frame", e.what());
    }
  }
  if (!frame) frame.emplace(Frame::eigenframe(h0.with_factor_dims(dims)));

  const json* weights_j = member(*init, "weights");
  if (!weights_j) fail("initial.weights", "missing field");
  std::optional<Ensemble> ensemble;
  try {
    if (weights_j->is_string()) {
      if (weights_j->get<std::string>() != "microcanonical") {
        fail("initial.weights", "expected an array, \"microcanonical\" or {\"canonical\": theta}");
      }
      ensemble.emplace(*frame, WeightVector::uniform(dims.total()));
    } else if (weights_j->is_object()) {
      check_keys(*weights_j, "initial.weights", {"canonical"});
      const json* c = member(*weights_j, "canonical");
      if (!c) fail("initial.weights.canonical", "missing field");
      if (!eigen_frame) fail("initial.frame", "canonical weights require the eigenframe");
      ensemble.emplace(canonical(h0.with_factor_dims(dims), number(*c, "initial.weights.canonical"), units).ensemble);
    } else {
      array(*weights_j, "initial.weights");
      RealVector p(Index(weights_j->size()));
      for (std::size_t i = 0; i < weights_j->size(); ++i) {
        p(Index(i)) = number((*weights_j)[i], at_index("initial.weights", i));
      }
      ensemble.emplace(*frame, WeightVector(p));
    }
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    fail("initial.weights", e.what());
  }

  ConstitutiveModel model;
  if (const json* m = member(doc, "model")) {
    check_keys(*m, "model", {"alpha", "kappa_ex", "kappa_ex_1", "kappa_ex_2", "kappa_int_1",
                             "kappa_int_2", "iso_mode"});
    model.alpha = number_or(*m, "alpha", "model", model.alpha);
    HeatConduction& c = model.conduction;
    c.kappa_ex = number_or(*m, "kappa_ex", "model", c.kappa_ex);
    c.kappa_ex_1 = number_or(*m, "kappa_ex_1", "model", c.kappa_ex_1);
    c.kappa_ex_2 = number_or(*m, "kappa_ex_2", "model", c.kappa_ex_2);
    c.kappa_int_1 = number_or(*m, "kappa_int_1", "model", c.kappa_int_1);
    c.kappa_int_2 = number_or(*m, "kappa_int_2", "model", c.kappa_int_2);
    if (const json* mode = member(*m, "iso_mode")) {
      const std::string v = mode->is_string() ? mode->get<std::string>() : "";
      if (v == "pairwise") {
        model.iso_mode = IsoMode::pairwise;
      } else if (v == "inert_partition") {
        model.iso_mode = IsoMode::inert_partition;
      } else {
        fail("model.iso_mode", "expected \"pairwise\" or \"inert_partition\"");
      }
    }
    try {
      model.validate();
    } catch (const Error& e) {
      fail("model", e.what());
    }
  }

  const json* run_j = member(doc, "run");
  if (!run_j) fail("run", "missing field");
  check_keys(*run_j, "run", {"t_end", "dt", "record_every", "isolated", "isolation_events",
                             "max_damping_events"});
  const json* t_end = member(*run_j, "t_end");
  if (!t_end) fail("run.t_end", "missing field");
  const json* dt = member(*run_j, "dt");
  if (!dt) fail("run.dt", "missing field");
  bool isolated = false;
  if (const json* iso = member(*run_j, "isolated")) isolated = boolean(*iso, "run.isolated");
  std::vector<IsolationEvent> events;
  if (const json* ev = member(*run_j, "isolation_events")) {
    array(*ev, "run.isolation_events");
    for (std::size_t i = 0; i < ev->size(); ++i) {
      const std::string p = at_index("run.isolation_events", i);
      const json& e = array((*ev)[i], p);
      if (e.size() != 2) fail(p, "expected [t, isolated]");
      events.push_back({number(e[0], at_index(p, 0)), boolean(e[1], at_index(p, 1))});
    }
  }

  try {
    BipartiteSystem system(std::move(*h), std::move(*ensemble), RateSplit::zero(dims.total()),
                           work, temps, isolated, units);
    Scenario scenario{std::move(name), std::move(system), model, std::move(schedule),
                      std::move(events)};
    scenario.t_end = number(*t_end, "run.t_end");
    scenario.dt = number(*dt, "run.dt");
    if (const json* r = member(*run_j, "record_every")) {
      scenario.record_every = int(integer(*r, "run.record_every"));
    }
    if (const json* m = member(*run_j, "max_damping_events")) {
      scenario.max_damping_events = integer(*m, "run.max_damping_events");
    }
    scenario.validate();
    return scenario;
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    fail("run", e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path.string(), "cannot open scenario file");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_scenario(text.str(), path.string());
  } catch (const InputError& e) {
    if (e.path() == path.string()) throw;
    throw InputError(path.string() + (e.path().empty() ? "" : ": " + e.path()), e.message());
  }
}

std::string serialize_scenario(const Scenario& s) {
  const BipartiteSystem& sys = s.initial;
  const CompoundHamiltonian& h = sys.hamiltonian();
  json doc;
  doc["name"] = s.name;
  doc["constants"] = {{"hbar", sys.units().hbar}, {"k_B", sys.units().k_B}};
  doc["dimensions"] = {{"d1", h.dims().first}, {"d2", h.dims().second}};

  auto part_json = [&](Part p, const char* own_key) {
    const PartHamiltonian& local = h.local(p);
    json j;
    j["base"] = matrix_json(local.base.matrix());
    if (own_key && !local.own.empty()) j[own_key] = list_json(local.own);
    if (!local.coupling.empty()) j["a12"] = list_json(local.coupling);
    return j;
  };
  doc["hamiltonian"] = {{"H1", part_json(Part::one, "a1")},
                        {"H2", part_json(Part::two, "a2")},
                        {"H12", part_json(Part::interaction, nullptr)}};

  json weights = json::array();
  const RealVector& p = sys.state().weights.values();
  for (Index k = 0; k < p.size(); ++k) weights.push_back(p(k));
  doc["initial"] = {{"weights", weights}, {"frame", matrix_json(sys.state().frame.vectors())}};

  const TemperatureSet& t = sys.temps();
  json temps = {{"Theta1", t.theta1}, {"Theta2", t.theta2}, {"Theta12", t.theta12}};
  if (s.schedule.track_contact_temperature) {
    temps["T_box"] = "track";
  } else if (s.schedule.t_box.empty()) {
    temps["T_box"] = t.t_box;
  } else if (s.schedule.t_box.times().size() == 1 && s.schedule.t_box.times()[0] == 0.0) {
    temps["T_box"] = s.schedule.t_box.values()[0](0);
  } else {
    temps["T_box"] = knots_json(s.schedule.t_box);
  }
  doc["temperatures"] = temps;

  json schedule = json::object();
  if (!s.schedule.a1.empty()) schedule["a1"] = knots_json(s.schedule.a1);
  if (!s.schedule.a2.empty()) schedule["a2"] = knots_json(s.schedule.a2);
  if (!s.schedule.a12.empty()) schedule["a12"] = knots_json(s.schedule.a12);
  if (!schedule.empty()) doc["schedule"] = schedule;

  const HeatConduction& c = s.model.conduction;
  doc["model"] = {{"alpha", s.model.alpha},         {"kappa_ex", c.kappa_ex},
                  {"kappa_ex_1", c.kappa_ex_1},     {"kappa_ex_2", c.kappa_ex_2},
                  {"kappa_int_1", c.kappa_int_1},   {"kappa_int_2", c.kappa_int_2},
                  {"iso_mode", iso_mode_name(s.model.iso_mode)}};

  json events = json::array();
  for (const auto& e : s.isolation_events) events.push_back({e.time, e.isolated});
  doc["run"] = {{"t_end", s.t_end},
                {"dt", s.dt},
                {"record_every", s.record_every},
                {"isolated", sys.isolated()},
                {"isolation_events", events},
                {"max_damping_events", s.max_damping_events}};
  return doc.dump(2) + "\n";
}

}  // namespace qthermo
