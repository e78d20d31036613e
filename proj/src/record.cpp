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

#include "qthermo/record.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

struct Column {
  std::string name;
  double* (*field)(ThermoRecord&);
};

#define QTHERMO_SCALAR(name) {#name, [](ThermoRecord& r) { return &r.name; }}

// Per-part columns are spelled out: Q1_ex, Q2_ex, Q12_ex, ...
#define QTHERMO_PER_PART(base, kind, array)                         \
  {base "1_" kind, [](ThermoRecord& r) { return &r.array[0]; }},  \
  {base "2_" kind, [](ThermoRecord& r) { return &r.array[1]; }},  \
  {base "12_" kind, [](ThermoRecord& r) { return &r.array[2]; }}

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      QTHERMO_SCALAR(t),
      QTHERMO_SCALAR(E),
      QTHERMO_SCALAR(W_dot),
      QTHERMO_SCALAR(Q_dot),
      QTHERMO_SCALAR(S),
      QTHERMO_SCALAR(S_dot),
      QTHERMO_SCALAR(Xi),
      QTHERMO_SCALAR(Sigma),
      QTHERMO_SCALAR(Theta),
      QTHERMO_PER_PART("Q", "ex", Q_ex),
      QTHERMO_PER_PART("Q", "int", Q_int),
      QTHERMO_PER_PART("W", "ex", W_ex),
      QTHERMO_PER_PART("W", "int", W_int),
      QTHERMO_PER_PART("Xi", "ex", Xi_ex),
      QTHERMO_PER_PART("Xi", "int", Xi_int),
      QTHERMO_SCALAR(S1),
      QTHERMO_SCALAR(S2),
      QTHERMO_SCALAR(S_deficiency),
      QTHERMO_SCALAR(S_dot_deficiency),
      QTHERMO_SCALAR(Xi_ex_gap),
      QTHERMO_SCALAR(Xi_int_sum),
      QTHERMO_SCALAR(T_box),
      QTHERMO_SCALAR(Theta1),
      QTHERMO_SCALAR(Theta2),
      QTHERMO_SCALAR(Theta12),
      {"isolated", nullptr},
      QTHERMO_SCALAR(p_iso_norm),
      QTHERMO_SCALAR(fI_spread),
      QTHERMO_SCALAR(f_spread),
  };
  return cols;
}

#undef QTHERMO_SCALAR
#undef QTHERMO_PER_PART

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& c : columns()) n.push_back(c.name);
    return n;
  }();
  return names;
}

std::string first_non_finite(const ThermoRecord& r) {
  ThermoRecord copy = r;
  for (const auto& c : columns()) {
    if (!c.field) continue;
    const double v = *c.field(copy);
    if (std::isnan(v)) return c.name;
    if (std::isinf(v) && c.name != "Theta" && c.name != "T_box") return c.name;
  }
  return {};
}

std::string csv_header() {
  std::string out;
  for (const auto& name : record_columns()) {
    if (!out.empty()) out += ',';
    out += name;
  }
  return out;
}

std::string csv_row(const ThermoRecord& r) {
  ThermoRecord copy = r;
  std::string out;
  for (const auto& c : columns()) {
    if (!out.empty()) out += ',';
    out += c.field ? format_number(*c.field(copy)) : (r.isolated ? "1" : "0");
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<ThermoRecord>& records) {
  out << csv_header() << '\n';
  for (const auto& r : records) out << csv_row(r) << '\n';
}

std::vector<ThermoRecord> read_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line) || line.empty()) {
    throw InputError(source, "empty trajectory file, expected a header row");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split(line);
  const auto& expected = record_columns();
  if (header != expected) {
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i >= header.size()) {
        throw InputError(source + ":1", "missing column '" + expected[i] + "'");
      }
      if (header[i] != expected[i]) {
        throw InputError(source + ":1", "column " + std::to_string(i + 1) + " is '" + header[i] +
                                            "', expected '" + expected[i] + "'");
      }
    }
    throw InputError(source + ":1", "unexpected extra column '" + header[expected.size()] + "'");
  }

  std::vector<ThermoRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (cells.size() != expected.size()) {
      throw InputError(where, "row has " + std::to_string(cells.size()) + " fields, expected " +
                                  std::to_string(expected.size()));
    }
    ThermoRecord r;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const char* begin = cells[i].c_str();
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin || *end != '\0') {
        throw InputError(where, "column '" + expected[i] + "': cannot parse '" + cells[i] + "'");
      }
      const Column& c = columns()[i];
      if (c.field) {
        *c.field(r) = v;
      } else {
        r.isolated = v != 0.0;
      }
    }
    records.push_back(r);
  }
  if (records.empty()) throw InputError(source, "trajectory file has no records");
  return records;
}

}  // namespace qthermo
