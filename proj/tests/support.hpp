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

// Helpers shared by the simulator tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "servopneu/servopneu.hpp"

namespace servopneu::testing {

/// Both chambers sealed (no leaks, no convection, valves centred) with the
/// piston driven at x(t) = amplitude sin(2 pi frequency t).
inline Scenario sealed_driven_scenario(double amplitude, double frequency, double duration) {
  Scenario s = default_scenario();
  s.name = "sealed";
  s.plant.leakage.A_l1 = 0.0;
  s.plant.leakage.A_l2 = 0.0;
  s.plant.lambda0 = 0.0;
  s.drive = {true, amplitude, frequency};
  s.integrator.duration = duration;
  s.integrator.dt = 1e-5;
  s.integrator.sample_interval = 1e-4;
  return s;
}

inline double stroke_index_end(const Trace& t, const Scenario& sc) {
  const double lim = sc.plant.cylinder.x_max();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::abs(t.rows[i].x) >= lim) return static_cast<double>(i);
  }
  return static_cast<double>(t.size());
}

/// Largest fall of |v| below its running maximum, relative to that maximum,
/// between motion onset and the first contact with an end stop.
inline double mid_run_speed_drop(const Trace& t, const Scenario& sc) {
  const auto end = static_cast<std::size_t>(stroke_index_end(t, sc));
  double peak = 0.0;
  double drop = 0.0;
  for (std::size_t i = 0; i < end; ++i) {
    const double s = std::abs(t.rows[i].v);
    peak = std::max(peak, s);
    if (peak > kMotionThreshold) drop = std::max(drop, (peak - s) / peak);
  }
  return drop;
}

/// Index of the first sample with |v| above the motion threshold.
inline std::size_t motion_onset(const Trace& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::abs(t.rows[i].v) > kMotionThreshold) return i;
  }
  return t.size();
}

inline double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace servopneu::testing
