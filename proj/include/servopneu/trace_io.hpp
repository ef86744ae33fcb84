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
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "servopneu/errors.hpp"
#include "servopneu/simulator.hpp"

namespace servopneu {

inline std::string trace_header() {
  std::string h;
  for (std::size_t i = 0; i < kTraceColumns.size(); ++i) {
    if (i) h += ',';
    h += kTraceColumns[i].name;
    h += '[';
    h += kTraceColumns[i].unit;
    h += ']';
  }
  return h;
}

namespace detail {
inline void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}
}  // namespace detail

/// CSV text: header with bracketed units, shortest round-trip decimal for
/// every value, LF line endings.
inline std::string trace_to_csv(const Trace& trace) {
  std::string out = trace_header();
  out += '\n';
  for (const auto& row : trace.rows) {
    for (std::size_t i = 0; i < kTraceColumns.size(); ++i) {
      if (i) out += ',';
      detail::append_number(out, row.*kTraceColumns[i].member);
    }
    out += '\n';
  }
  return out;
}

inline void ensure_parent(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::ios_base::failure("write failed for '" + path.string() + "'");
}

inline void export_trace(const Trace& trace, const std::filesystem::path& path) {
  write_text_file(path, trace_to_csv(trace));
}

inline Trace trace_from_csv(const std::string& text, const std::string& origin = "trace") {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != trace_header()) {
    throw ParseError(origin + ": line 1: unexpected header");
  }
  Trace trace;
  trace.scenario = std::filesystem::path(origin).stem().string();
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    TraceRow row{};
    std::size_t col = 0;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t next = std::min(line.find(',', pos), line.size());
      if (col >= kTraceColumns.size()) {
        throw ParseError(origin + ": line " + std::to_string(lineno) + ": too many fields");
      }
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + next, v);
      if (ec != std::errc() || ptr != line.data() + next) {
        throw ParseError(origin + ": line " + std::to_string(lineno) + ": bad number in column "
                         + kTraceColumns[col].name);
      }
      row.*kTraceColumns[col].member = v;
      ++col;
      pos = next + 1;
    }
    if (col != kTraceColumns.size()) {
      throw ParseError(origin + ": line " + std::to_string(lineno) + ": expected "
                       + std::to_string(kTraceColumns.size()) + " fields");
    }
    trace.rows.push_back(row);
  }
  return trace;
}

inline Trace import_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return trace_from_csv(ss.str(), path.string());
}

/// Motion threshold shared by the dead-time and reversal metrics.
inline constexpr double kMotionThreshold = 1.0e-3;  // [m/s]

struct RunSummary {
  double max_speed = 0.0;             // max |v| [m/s]
  std::optional<double> dead_time;    // first t with |v| > threshold [s]
  double peak_p1 = 0.0;               // [Pa]
  double peak_p2 = 0.0;               // [Pa]
  double final_position = 0.0;        // [m]
  int reversals = 0;                  // velocity sign reversals
  double amplitude = 0.0;             // max |x - x(0)| [m]
};

/// Fraction of the peak speed below which velocity excursions are not
/// counted as reversals.
inline constexpr double kReversalFraction = 0.02;

/// Hysteresis band used by summarize().
inline double reversal_band(double max_speed) {
  return std::max(kMotionThreshold, kReversalFraction * max_speed);
}

/// Sign reversals are counted with hysteresis: the velocity has to leave
/// the band |v| <= band on the opposite side.
inline int count_reversals(const std::vector<double>& v, double band = kMotionThreshold) {
  int sign = 0;
  int count = 0;
  for (double x : v) {
    const int s = x > band ? 1 : (x < -band ? -1 : 0);
    if (s == 0) continue;
    if (sign != 0 && s != sign) ++count;
    sign = s;
  }
  return count;
}

inline RunSummary summarize(const Trace& trace) {
  if (trace.empty()) throw ContractViolation("summarize: empty trace");
  RunSummary s;
  const double x0 = trace.rows.front().x;
  bool moved = false;
  std::vector<double> v;
  v.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceRow& r = trace.rows[i];
    s.max_speed = std::max(s.max_speed, std::abs(r.v));
    s.peak_p1 = std::max(s.peak_p1, r.p1);
    s.peak_p2 = std::max(s.peak_p2, r.p2);
    s.amplitude = std::max(s.amplitude, std::abs(r.x - x0));
    if (!moved && std::abs(r.v) > kMotionThreshold) {
      moved = true;
      // Motion within the first sample means no measurable dead time.
      if (i > 1) s.dead_time = r.t;
    }
    v.push_back(r.v);
  }
  s.final_position = trace.rows.back().x;
  s.reversals = count_reversals(v, reversal_band(s.max_speed));
  return s;
}

/// Largest per-chamber and total mismatch between the chamber masses and
/// the integrated boundary flows, relative to the peak total mass.
struct MassAudit {
  double chamber1 = 0.0;
  double chamber2 = 0.0;
  double total = 0.0;
};

inline MassAudit mass_audit(const Trace& trace) {
  MassAudit a;
  if (trace.empty()) return a;
  const TraceRow& r0 = trace.rows.front();
  double scale = 0.0;
  for (const auto& r : trace.rows) scale = std::max(scale, r.m1 + r.m2);
  for (const auto& r : trace.rows) {
    const double e1 = r.m1 - (r0.m1 + r.m1_net - r0.m1_net);
    const double e2 = r.m2 - (r0.m2 + r.m2_net - r0.m2_net);
    a.chamber1 = std::max(a.chamber1, std::abs(e1) / scale);
    a.chamber2 = std::max(a.chamber2, std::abs(e2) / scale);
    a.total = std::max(a.total, std::abs(e1 + e2) / scale);
  }
  return a;
}

}  // namespace servopneu
