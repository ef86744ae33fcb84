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
#include <map>
#include <numbers>
#include <string>

#include "servopneu/actuator.hpp"
#include "servopneu/errors.hpp"
#include "servopneu/friction.hpp"
#include "servopneu/gasflow.hpp"
#include "servopneu/signal.hpp"
#include "servopneu/transmission.hpp"
#include "servopneu/valve.hpp"

namespace servopneu {

/// Supply and surroundings. The supply behaves as an ideal stagnation
/// reservoir at (p_sup, T_sup).
struct Environment {
  double p_atm = 101325.0;  // [Pa]
  double T_amb = 293.15;    // [K]
  double p_sup = 701325.0;  // [Pa]
  double T_sup = 293.15;    // [K]
  double g = 9.81;          // [m/s^2]

  void validate() const {
    if (!(p_atm > 0.0) || !(T_amb > 0.0) || !(p_sup > 0.0) || !(T_sup > 0.0) || !(g >= 0.0)) {
      throw InvariantViolation("Environment: pressures and temperatures must be positive");
    }
  }

  friend bool operator==(const Environment&, const Environment&) = default;
};

/// Every physical parameter of the actuator: two identical valves, two
/// identical pipes, one cylinder.
struct Plant {
  GasProperties gas = GasProperties::air();
  Environment env;
  CylinderGeometry cylinder;
  LuGreParams friction;
  double lambda0 = 20.0;  // [W/(m^2 K)]
  LeakageSpec leakage;
  LoadSpec load;
  PipeSpec pipe;
  ValveGeometry valve;
  SpoolParams spool;

  /// Reference state of the convective law is the unpressurised supply
  /// air: P0 = p_atm, T0 = T_sup.
  ThermalParams thermal() const { return {lambda0, env.p_atm, env.T_sup, env.T_amb}; }

  void validate() const {
    gas.validate();
    env.validate();
    cylinder.validate();
    friction.validate();
    thermal().validate();
    leakage.validate();
    load.validate();
    pipe.validate();
    valve.validate();
    spool.validate();
  }

  friend bool operator==(const Plant&, const Plant&) = default;
};

struct Inputs {
  Signal i_c1;   // valve 1 current [A]
  Signal i_c2;   // valve 2 current [A]
  Signal F_ext;  // external force on the rod [N], positive pushes toward -x

  friend bool operator==(const Inputs&, const Inputs&) = default;
};

struct InitialConditions {
  double x0 = 0.0;
  double v0 = 0.0;
  double p1 = 101325.0;
  double p2 = 101325.0;
  double T1 = 293.15;
  double T2 = 293.15;

  friend bool operator==(const InitialConditions&, const InitialConditions&) = default;
};

struct IntegratorSettings {
  double duration = 0.2;          // [s]
  double dt = 1.0e-5;             // [s]
  double sample_interval = 1e-4;  // [s]

  friend bool operator==(const IntegratorSettings&, const IntegratorSettings&) = default;
};

/// Optional kinematic drive replacing the piston force balance:
/// x(t) = x0 + amplitude sin(2 pi frequency t).
struct PistonDrive {
  bool enabled = false;
  double amplitude = 0.0;  // [m]
  double frequency = 0.0;  // [Hz]

  double omega() const noexcept { return 2.0 * std::numbers::pi * frequency; }
  double position(double x0, double t) const { return x0 + amplitude * std::sin(omega() * t); }
  double velocity(double t) const { return amplitude * omega() * std::cos(omega() * t); }
  double acceleration(double t) const {
    return -amplitude * omega() * omega() * std::sin(omega() * t);
  }

  friend bool operator==(const PistonDrive&, const PistonDrive&) = default;
};

enum class Provenance { paper, assumed, user };

struct Scenario {
  std::string name = "custom";
  std::string description;
  Plant plant;
  Inputs inputs;
  InitialConditions initial;
  IntegratorSettings integrator;
  PistonDrive drive;
  std::map<std::string, Provenance> provenance;  // dotted key -> origin

  void validate() const {
    plant.validate();
    const auto& c = plant.cylinder;
    if (!(initial.x0 >= c.x_min() && initial.x0 <= c.x_max())) {
      throw InvariantViolation("Scenario: initial position outside stroke");
    }
    if (!(initial.p1 > 0.0) || !(initial.p2 > 0.0) || !(initial.T1 > 0.0) || !(initial.T2 > 0.0)) {
      throw InvariantViolation("Scenario: initial pressures and temperatures must be positive");
    }
    if (!(integrator.duration >= 0.0)) throw InvariantViolation("Scenario: negative duration");
    if (!(integrator.dt > 0.0) || !(integrator.sample_interval >= integrator.dt)) {
      throw InvariantViolation("Scenario: require 0 < dt <= sample_interval");
    }
    if (drive.enabled) {
      const double lo = initial.x0 - std::abs(drive.amplitude);
      const double hi = initial.x0 + std::abs(drive.amplitude);
      if (lo < c.x_min() || hi > c.x_max()) {
        throw InvariantViolation("Scenario: piston drive leaves the stroke");
      }
    }
  }

  /// Value equality; provenance is metadata and does not take part.
  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.name == b.name && a.description == b.description && a.plant == b.plant
           && a.inputs == b.inputs && a.initial == b.initial && a.integrator == b.integrator
           && a.drive == b.drive;
  }
};

}  // namespace servopneu
