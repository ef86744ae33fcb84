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

#include <cmath>
#include <numbers>

#include "servopneu/errors.hpp"
#include "servopneu/gasflow.hpp"

namespace servopneu {

enum class Chamber { advancing = 1, returning = 2 };

/// Double-acting cylinder. Piston position x is measured from midstroke;
/// chamber 1 (blank side, area A1) grows with x.
struct CylinderGeometry {
  double A1 = 4.908738521234052e-4;  // [m^2]
  double A2 = 4.123340357836604e-4;  // [m^2]
  double Lr = 0.2;                   // stroke [m]
  double V01 = 2.0e-6;               // dead volume, chamber 1 [m^3]
  double V02 = 2.0e-6;               // dead volume, chamber 2 [m^3]
  double da = 0.032;                 // external diameter [m]
  double phi = 0.0;                  // inclination [rad]

  double Ar() const noexcept { return A1 - A2; }
  double x_min() const noexcept { return -0.5 * Lr; }
  double x_max() const noexcept { return 0.5 * Lr; }

  static CylinderGeometry from_diameters(double bore, double rod) {
    CylinderGeometry g;
    g.A1 = std::numbers::pi * bore * bore / 4.0;
    g.A2 = g.A1 - std::numbers::pi * rod * rod / 4.0;
    return g;
  }

  void validate() const {
    if (!(A2 > 0.0) || !(A1 > A2)) throw InvariantViolation("CylinderGeometry: require A1 > A2 > 0");
    if (!(Lr > 0.0)) throw InvariantViolation("CylinderGeometry: stroke must be positive");
    if (!(V01 > 0.0) || !(V02 > 0.0)) {
      throw InvariantViolation("CylinderGeometry: dead volumes must be positive");
    }
    if (!(da > 0.0)) throw InvariantViolation("CylinderGeometry: external diameter must be positive");
  }

  friend bool operator==(const CylinderGeometry&, const CylinderGeometry&) = default;
};

struct ChamberState {
  double p = 101325.0;  // [Pa]
  double T = 293.15;    // [K]

  double density(const GasProperties& gas) const { return p / (gas.R() * T); }
  double mass(double volume, const GasProperties& gas) const { return density(gas) * volume; }
};

struct PistonState {
  double x = 0.0;  // [m]
  double v = 0.0;  // [m/s]
};

struct ThermalParams {
  double lambda0 = 20.0;   // convective coefficient at (P0, T0) [W/(m^2 K)]
  double P0 = 101325.0;    // [Pa]
  double T0 = 293.15;      // [K]
  double Ta = 293.15;      // ambient [K]

  void validate() const {
    if (!(lambda0 >= 0.0) || !(P0 > 0.0) || !(T0 > 0.0) || !(Ta > 0.0)) {
      throw InvariantViolation("ThermalParams: lambda0 >= 0 and P0, T0, Ta > 0 required");
    }
  }
};

struct LeakageSpec {
  double A_l1 = 0.0;  // chamber 1 <-> chamber 2 [m^2]
  double A_l2 = 0.0;  // chamber 2 <-> atmosphere [m^2]
  double c_dl = 0.8;

  void validate() const {
    if (!(A_l1 >= 0.0) || !(A_l2 >= 0.0)) throw InvariantViolation("LeakageSpec: areas must be >= 0");
    if (!(c_dl > 0.0) || c_dl > 1.0) throw InvariantViolation("LeakageSpec: require 0 < c_dl <= 1");
  }

  friend bool operator==(const LeakageSpec&, const LeakageSpec&) = default;
};

struct LoadSpec {
  double M_l = 0.0;   // load [kg]
  double M_p = 0.25;  // rod and piston [kg]

  double total() const noexcept { return M_l + M_p; }

  void validate() const {
    if (!(M_l >= 0.0) || !(M_p >= 0.0) || !(total() > 0.0)) {
      throw InvariantViolation("LoadSpec: masses must be >= 0 with positive total");
    }
  }

  friend bool operator==(const LoadSpec&, const LoadSpec&) = default;
};

/// Mass flows crossing one chamber boundary. Several inflows at different
/// stagnation temperatures combine into one mass-weighted T_in, which is
/// exact because the energy and pressure equations are linear in m_in T_in.
struct ChamberFlows {
  double m_in = 0.0;     // [kg/s]
  double T_in = 293.15;  // [K]
  double m_out = 0.0;    // [kg/s]

  void add_inflow(double m, double temperature) {
    if (m <= 0.0) return;
    const double total = m_in + m;
    T_in = (m_in * T_in + m * temperature) / total;
    m_in = total;
  }
  void add_outflow(double m) {
    if (m > 0.0) m_out += m;
  }
  /// Signed flow, positive into the chamber.
  void add(double m, double upstream_temperature) {
    if (m > 0.0) add_inflow(m, upstream_temperature);
    else add_outflow(-m);
  }
  double net() const noexcept { return m_in - m_out; }
};

struct ChamberVolumes {
  double V1;      // [m^3]
  double V2;      // [m^3]
  double dV1_dx;  // V1 rate per unit piston velocity [m^2]
  double dV2_dx;  // [m^2]
};

inline ChamberVolumes chamber_volumes(double x, const CylinderGeometry& geom) {
  if (!(x >= geom.x_min() && x <= geom.x_max())) {
    throw ContractViolation("chamber_volumes: piston position " + std::to_string(x)
                            + " outside stroke");
  }
  const double half = 0.5 * geom.Lr;
  return {geom.V01 + geom.A1 * (half + x), geom.V02 + geom.A2 * (half - x), geom.A1, -geom.A2};
}

/// Lateral wall area exposed to chamber air.
inline double wetted_area(double x, Chamber chamber, const CylinderGeometry& geom) {
  const double half = 0.5 * geom.Lr;
  const double len = chamber == Chamber::advancing ? half + x : half - x;
  return std::numbers::pi * geom.da * std::max(len, 0.0);
}

/// Convective heat into the chamber [W]; negative when the air is hotter
/// than ambient. lambda scales with sqrt(pT).
inline double heat_rate(const ChamberState& s, double x, Chamber chamber, const ThermalParams& th,
                        const CylinderGeometry& geom) {
  const double lambda = th.lambda0 * std::sqrt(s.p * s.T / (th.P0 * th.T0));
  return -lambda * wetted_area(x, chamber, geom) * (s.T - th.Ta);
}

namespace detail {
inline void check_chamber(const ChamberState& s, double volume, const char* who) {
  if (!(s.p > 0.0) || !(s.T > 0.0) || !(volume > 0.0)) {
    throw InvalidStateError(std::string(who) + ": pressure, temperature and volume must be positive");
  }
}
}  // namespace detail

/// Energy balance of a variable-volume chamber with one (combined) inflow at
/// stagnation temperature t_in and outflow at chamber temperature.
inline double temperature_rate(const ChamberState& s, double volume, double volume_rate,
                               double m_in, double t_in, double m_out, double heat,
                               const GasProperties& gas) {
  detail::check_chamber(s, volume, "temperature_rate");
  const double k = gas.gamma();
  const double r = gas.R();
  const double pv = s.p * volume;
  return (k - 1.0) * s.T / pv * (-s.p * volume_rate - r * s.T * m_out + heat)
         + (k * t_in - s.T) * r * s.T / pv * m_in;
}

inline double pressure_rate(const ChamberState& s, double volume, double volume_rate, double m_in,
                            double t_in, double m_out, double heat, const GasProperties& gas) {
  detail::check_chamber(s, volume, "pressure_rate");
  const double k = gas.gamma();
  const double r = gas.R();
  return -k * s.p / volume * volume_rate + k * r * t_in / volume * m_in
         - k * r * s.T / volume * m_out + (k - 1.0) / volume * heat;
}

struct LeakageFlows {
  double between = 0.0;     // chamber 1 -> chamber 2 [kg/s], signed
  double to_ambient = 0.0;  // chamber 2 -> atmosphere [kg/s], signed
  ChamberFlows chamber1;
  ChamberFlows chamber2;
};

/// Leaks through the piston seal and the rod seal. Each leak runs from the
/// higher pressure side, with the source temperature as stagnation value.
inline LeakageFlows leakage_flows(const ChamberState& ch1, const ChamberState& ch2, double p_atm,
                                  double t_atm, const LeakageSpec& leak,
                                  const GasProperties& gas) {
  LeakageFlows out;
  out.between = oriented_mass_flow({leak.A_l1, leak.c_dl}, ch1.p, ch1.T, ch2.p, ch2.T, gas);
  out.to_ambient = oriented_mass_flow({leak.A_l2, leak.c_dl}, ch2.p, ch2.T, p_atm, t_atm, gas);

  out.chamber1.add(-out.between, ch2.T);
  out.chamber2.add(out.between, ch1.T);
  out.chamber2.add(-out.to_ambient, t_atm);
  return out;
}

struct PistonForces {
  double acceleration = 0.0;  // [m/s^2]
  double hard_stop = 0.0;     // [N]
  double net = 0.0;           // applied force before the stop reaction [N]
};

/// Newton's law on rod and load. At a stroke limit, a net force pushing
/// further out is absorbed by the stop (zero acceleration); a force pulling
/// back inward releases the rod.
inline PistonForces piston_acceleration(const PistonState& piston, const ChamberState& ch1,
                                        const ChamberState& ch2, double friction,
                                        double external, const LoadSpec& load,
                                        const CylinderGeometry& geom, double p_atm,
                                        double gravity = 9.81) {
  const double mass = load.total();
  // (p1 - patm) A1 - (p2 - patm) A2 == p1 A1 - p2 A2 - patm Ar, exact at rest.
  const double pneumatic = (ch1.p - p_atm) * geom.A1 - (ch2.p - p_atm) * geom.A2;
  PistonForces f;
  f.net = pneumatic - friction - external - mass * gravity * std::sin(geom.phi);
  const bool at_max = piston.x >= geom.x_max() && f.net > 0.0;
  const bool at_min = piston.x <= geom.x_min() && f.net < 0.0;
  if (at_max || at_min) {
    f.hard_stop = f.net;
    f.acceleration = 0.0;
  } else {
    f.acceleration = f.net / mass;
  }
  return f;
}

}  // namespace servopneu
