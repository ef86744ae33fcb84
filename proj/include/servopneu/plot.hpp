// Copyright 2026 The servopneu Authors
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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "servopneu/errors.hpp"
#include "servopneu/simulator.hpp"
#include "servopneu/trace_io.hpp"

namespace servopneu {

namespace detail {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> y;
};

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Roughly 5 "nice" tick positions covering [lo, hi].
inline std::vector<double> nice_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double stepv = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    stepv = m * mag;
    if (stepv >= raw) break;
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / stepv) * stepv; t <= hi + 1e-9 * span; t += stepv) {
    out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  }
  return out;
}

inline std::string svg_panel(const std::vector<double>& t, const std::vector<Series>& series,
                             const std::string& ylabel, double top, double height, double left,
                             double width, bool xlabels) {
  double lo = series.front().y.front(), hi = lo;
  for (const auto& s : series) {
    for (double v : s.y) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    const double pad = std::max(std::abs(hi) * 0.1, 1e-9);
    lo -= pad;
    hi += pad;
  } else {
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  const double t0 = t.front();
  const double t1 = t.size() > 1 ? t.back() : t0 + 1.0;
  auto px = [&](double tv) { return left + (tv - t0) / (t1 - t0) * width; };
  auto py = [&](double yv) { return top + (hi - yv) / (hi - lo) * height; };

  std::string s = "<g class=\"panel\" data-ylabel=\"" + ylabel + "\">\n";
  s += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(width)
       + "\" height=\"" + fmt(height) + "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (double yt : nice_ticks(lo, hi)) {
    s += "<line x1=\"" + fmt(left) + "\" x2=\"" + fmt(left + width) + "\" y1=\"" + fmt(py(yt))
         + "\" y2=\"" + fmt(py(yt)) + "\" stroke=\"#ddd\"/>\n";
    s += "<text x=\"" + fmt(left - 6) + "\" y=\"" + fmt(py(yt) + 4)
         + "\" font-size=\"11\" text-anchor=\"end\">" + fmt(yt) + "</text>\n";
  }
  for (double xt : nice_ticks(t0, t1)) {
    s += "<line x1=\"" + fmt(px(xt)) + "\" x2=\"" + fmt(px(xt)) + "\" y1=\"" + fmt(top)
         + "\" y2=\"" + fmt(top + height) + "\" stroke=\"#eee\"/>\n";
    if (xlabels) {
      s += "<text x=\"" + fmt(px(xt)) + "\" y=\"" + fmt(top + height + 16)
           + "\" font-size=\"11\" text-anchor=\"middle\">" + fmt(xt) + "</text>\n";
    }
  }
  s += "<text transform=\"translate(" + fmt(left - 58) + "," + fmt(top + height / 2)
       + ") rotate(-90)\" font-size=\"13\" text-anchor=\"middle\">" + ylabel + "</text>\n";
  double legend_x = left + 10;
  for (const auto& ser : series) {
    s += "<polyline fill=\"none\" stroke=\"" + ser.color + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < t.size(); ++i) {
      s += fmt(px(t[i])) + "," + fmt(py(ser.y[i])) + " ";
    }
    s += "\"/>\n";
    s += "<text x=\"" + fmt(legend_x) + "\" y=\"" + fmt(top + 16) + "\" font-size=\"12\" fill=\""
         + ser.color + "\">" + ser.label + "</text>\n";
    legend_x += 60;
  }
  s += "</g>\n";
  return s;
}

}  // namespace detail

/// Three stacked panels against time: displacement, velocity, and both
/// chamber pressures. Long traces are decimated to at most 2000 points.
inline std::string trace_to_svg(const Trace& trace) {
  if (trace.empty()) throw ContractViolation("emit_plot: empty trace");
  const std::size_t stride = std::max<std::size_t>(1, (trace.size() + 1999) / 2000);
  std::vector<double> t, x, v, p1, p2;
  for (std::size_t i = 0; i < trace.size(); i += stride) {
    const auto& r = trace.rows[i];
    t.push_back(r.t);
    x.push_back(r.x * 1e3);
    v.push_back(r.v);
    p1.push_back(r.p1 * 1e-6);
    p2.push_back(r.p2 * 1e-6);
  }
  if ((trace.size() - 1) % stride != 0) {
    const auto& r = trace.rows.back();
    t.push_back(r.t);
    x.push_back(r.x * 1e3);
    v.push_back(r.v);
    p1.push_back(r.p1 * 1e-6);
    p2.push_back(r.p2 * 1e-6);
  }

  const double W = 820, left = 90, width = 700, h = 220, gap = 40, top0 = 50;
  const double H = top0 + 3 * h + 2 * gap + 60;
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(W) + "\" height=\""
       + detail::fmt(H) + "\" font-family=\"sans-serif\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + detail::fmt(W / 2) + "\" y=\"28\" font-size=\"16\" text-anchor=\"middle\">"
       + trace.scenario + "</text>\n";
  s += detail::svg_panel(t, {{"x", "#1f77b4", x}}, "displacement [mm]", top0, h, left, width, false);
  s += detail::svg_panel(t, {{"v", "#d62728", v}}, "velocity [m/s]", top0 + h + gap, h, left, width,
                         false);
  s += detail::svg_panel(t, {{"p1", "#2ca02c", p1}, {"p2", "#9467bd", p2}}, "pressure [MPa]",
                         top0 + 2 * (h + gap), h, left, width, true);
  s += "<text x=\"" + detail::fmt(left + width / 2) + "\" y=\"" + detail::fmt(H - 12)
       + "\" font-size=\"13\" text-anchor=\"middle\">time [s]</text>\n";
  s += "</svg>\n";
  return s;
}

inline void emit_plot(const Trace& trace, const std::filesystem::path& path) {
  write_text_file(path, trace_to_svg(trace));
}

}  // namespace servopneu
