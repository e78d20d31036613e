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

#include "qthermo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qthermo {

namespace {

constexpr double panel_w = 360, panel_h = 220, margin = 50;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void panel(std::ostringstream& os, double x0, double y0, const char* label,
           const std::vector<ThermoRecord>& records, double ThermoRecord::*field) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : records)
    if (std::isfinite(r.*field)) pts.emplace_back(r.t, r.*field);

  const double w = panel_w - margin - 10, h = panel_h - 2 * 30;
  const double px = x0 + margin, py = y0 + 30;
  os << "<g>\n<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << w << "\" height=\"" << h
     << "\" fill=\"none\" stroke=\"#888\"/>\n";
  os << "<text x=\"" << px << "\" y=\"" << py - 8 << "\" font-size=\"14\">" << label
     << " vs t</text>\n";
  if (pts.empty()) {
    os << "<text x=\"" << px + 10 << "\" y=\"" << py + h / 2 << "\" font-size=\"12\">no finite data</text>\n</g>\n";
    return;
  }
  double t0 = pts.front().first, t1 = pts.back().first;
  auto [ylo_it, yhi_it] = std::minmax_element(
      pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  double y_lo = ylo_it->second, y_hi = yhi_it->second;
  if (t1 <= t0) t1 = t0 + 1;
  if (y_hi - y_lo <= 1e-12 * std::max(1.0, std::abs(y_hi))) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (const auto& [t, v] : pts) {
    os << fmt(px + (t - t0) / (t1 - t0) * w) << "," << fmt(py + h - (v - y_lo) / (y_hi - y_lo) * h)
       << " ";
  }
  os << "\"/>\n";
  os << "<text x=\"" << x0 + 2 << "\" y=\"" << py + 10 << "\" font-size=\"10\">" << fmt(y_hi)
     << "</text>\n";
  os << "<text x=\"" << x0 + 2 << "\" y=\"" << py + h << "\" font-size=\"10\">" << fmt(y_lo)
     << "</text>\n";
  os << "<text x=\"" << px << "\" y=\"" << py + h + 14 << "\" font-size=\"10\">" << fmt(t0)
     << "</text>\n";
  os << "<text x=\"" << px + w - 30 << "\" y=\"" << py + h + 14 << "\" font-size=\"10\">"
     << fmt(t1) << "</text>\n</g>\n";
}

}  // namespace

std::string trajectory_svg(const std::vector<ThermoRecord>& records, const std::string& title) {
  std::ostringstream os;
  const double top = title.empty() ? 0 : 24;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * panel_w << "\" height=\""
     << 2 * panel_h + top << "\" font-family=\"sans-serif\">\n";
  if (!title.empty()) {
    os << "<text x=\"10\" y=\"18\" font-size=\"16\">" << escape(title) << "</text>\n";
  }
  panel(os, 0, top, "S", records, &ThermoRecord::S);
  panel(os, panel_w, top, "Sigma", records, &ThermoRecord::Sigma);
  panel(os, 0, top + panel_h, "Theta", records, &ThermoRecord::Theta);
  panel(os, panel_w, top + panel_h, "E", records, &ThermoRecord::E);
  os << "</svg>\n";
  return os.str();
}

}  // namespace qthermo
