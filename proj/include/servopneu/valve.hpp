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
#include <numbers>

#include "servopneu/errors.hpp"
#include "servopneu/gasflow.hpp"

namespace servopneu {

enum class ValvePath { supply, exhaust };

/// Sleeve with circular radial holes of radius Rh, covered by a spool land
/// of half-width pw > Rh (overlap). Positive spool travel uncovers the
/// supply holes, negative travel the exhaust holes.
struct ValveGeometry {
  double Rh = 1.0e-3;     // hole radius [m]
  double pw = 1.05e-3;    // land half-width [m]
  int n_holes = 1;
  double c_d = 0.8;
  double x_s_max = 2.255e-3;  // travel limit [m]

  double full_open_travel() const noexcept { return pw + Rh; }
  double full_area() const noexcept { return n_holes * std::numbers::pi * Rh * Rh; }

  void validate() const {
    if (!(Rh > 0.0) || !(pw > Rh)) throw InvariantViolation("ValveGeometry: require pw > Rh > 0");
    if (n_holes < 1) throw InvariantViolation("ValveGeometry: need at least one hole");
    if (!(c_d > 0.0) || c_d > 1.0) throw InvariantViolation("ValveGeometry: require 0 < c_d <= 1");
    if (!(x_s_max > 0.0)) throw InvariantViolation("ValveGeometry: travel limit must be positive");
  }

  friend bool operator==(const ValveGeometry&, const ValveGeometry&) = default;
};

struct SpoolParams {
  double Ms = 0.01;    // spool mass [kg]
  double cs = 6.0;     // viscous friction [N s/m]
  double ks = 1000.0;  // stiffness of each centring spring [N/m]
  double Ksol = 8.8;   // solenoid force constant [N/A]

  void validate() const {
    if (!(Ms > 0.0) || !(cs > 0.0) || !(ks > 0.0) || !(Ksol > 0.0)) {
      throw InvariantViolation("SpoolParams: all coefficients must be positive");
    }
  }

  friend bool operator==(const SpoolParams&, const SpoolParams&) = default;
};

struct SpoolState {
  double x_s = 0.0;  // [m]
  double v_s = 0.0;  // [m/s]
};

namespace detail {

/// Segment of depth `depth` of a circle of radius rh, with rest = 2 rh - depth
/// passed separately so both ends keep full precision.
inline double segment(double depth, double rest, double rh) {
  if (depth <= 0.0) return 0.0;
  if (rest <= 0.0) return std::numbers::pi * rh * rh;
  const double a = 2.0 * rh * rh * std::atan2(std::sqrt(depth), std::sqrt(rest))
                   - 0.5 * (rest - depth) * std::sqrt(depth * rest);
  return std::clamp(a, 0.0, std::numbers::pi * rh * rh);
}

}  // namespace detail

/// Area of the circular segment of a hole of radius rh uncovered by an
/// edge at depth x_e, 0 <= x_e <= 2 rh.
inline double segment_area(double x_e, double rh) {
  if (!(x_e >= 0.0) || x_e > 2.0 * rh) {
    throw ContractViolation("segment_area: x_e outside [0, 2 Rh]");
  }
  return detail::segment(x_e, 2.0 * rh - x_e, rh);
}

/// Open area of one flow path for spool displacement x_s (all holes).
inline double effective_area(double x_s, ValvePath path, const ValveGeometry& g) {
  const double s = path == ValvePath::supply ? x_s : -x_s;
  const double closed = std::abs(g.pw - g.Rh);
  const double open = std::abs(g.pw + g.Rh);
  if (s <= closed) return 0.0;
  if (s >= open) return g.full_area();
  return g.n_holes * detail::segment(s - closed, open - s, g.Rh);
}

struct ValveFlows {
  double m_in = 0.0;   // supply -> chamber [kg/s]
  double m_out = 0.0;  // chamber -> exhaust or back to supply [kg/s]
  double T_in = 0.0;   // stagnation temperature of m_in [K]

  double net() const noexcept { return m_in - m_out; }
};

/// Flows through both paths of one valve feeding one chamber.
inline ValveFlows valve_flows(const SpoolState& spool, double p_sup, double p_chamber,
                              double p_atm, double t_sup, double t_chamber,
                              const ValveGeometry& g, const GasProperties& gas) {
  ValveFlows f;
  f.T_in = t_sup;
  const double supply = effective_area(spool.x_s, ValvePath::supply, g);
  if (supply > 0.0) {
    const double m = oriented_mass_flow({supply, g.c_d}, p_sup, t_sup, p_chamber, t_chamber, gas);
    if (m >= 0.0) f.m_in += m;
    else f.m_out += -m;
  }
  const double exhaust = effective_area(spool.x_s, ValvePath::exhaust, g);
  if (exhaust > 0.0) {
    const double m = oriented_mass_flow({exhaust, g.c_d}, p_chamber, t_chamber, p_atm, t_sup, gas);
    if (m >= 0.0) f.m_out += m;
    else f.m_in += -m;  // ambient air drawn back through the exhaust port
  }
  return f;
}

/// Second-order spool: Ms a + cs v + 2 ks x = Ksol i. At the travel limit a
/// force pushing further out is absorbed.
inline double spool_acceleration(const SpoolState& s, double current, const SpoolParams& p,
                                 double travel_limit) {
  const double force = p.Ksol * current - p.cs * s.v_s - 2.0 * p.ks * s.x_s;
  if ((s.x_s >= travel_limit && force > 0.0) || (s.x_s <= -travel_limit && force < 0.0)) {
    return 0.0;
  }
  return force / p.Ms;
}

}  // namespace servopneu
