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

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "servopneu/actuator.hpp"
#include "servopneu/errors.hpp"
#include "servopneu/friction.hpp"
#include "servopneu/gasflow.hpp"
#include "servopneu/scenario.hpp"
#include "servopneu/transmission.hpp"
#include "servopneu/valve.hpp"

namespace servopneu {

/// The integrated scalars: 11 physical states plus three mass-audit
/// quadratures (net mass delivered to each chamber, net mass lost to the
/// atmosphere through the rod seal).
class StateVector {
 public:
  enum Index : std::size_t {
    kX, kV, kZ, kP1, kT1, kP2, kT2, kXs1, kVs1, kXs2, kVs2, kNet1, kNet2, kAtm, kSize
  };

  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }

  PistonState piston() const { return {v_[kX], v_[kV]}; }
  LuGreState bristle() const { return {v_[kZ]}; }
  ChamberState chamber1() const { return {v_[kP1], v_[kT1]}; }
  ChamberState chamber2() const { return {v_[kP2], v_[kT2]}; }
  SpoolState spool1() const { return {v_[kXs1], v_[kVs1]}; }
  SpoolState spool2() const { return {v_[kXs2], v_[kVs2]}; }

  /// y + h k, written out so the update is the same on every platform.
  StateVector axpy(double h, const StateVector& k) const {
    StateVector out;
    for (std::size_t i = 0; i < kSize; ++i) out.v_[i] = v_[i] + h * k.v_[i];
    return out;
  }

  bool finite() const {
    for (double x : v_) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::array<double, kSize> v_{};
};

struct SystemState {
  double t = 0.0;
  std::size_t steps = 0;
  StateVector y;
  DelayLine pipe1;
  DelayLine pipe2;
};

/// Everything a trace row reports besides the states themselves.
struct Diagnostics {
  double acceleration = 0.0;
  double friction = 0.0;
  double hard_stop = 0.0;
  ChamberFlows chamber1;  // valve side plus leaks
  ChamberFlows chamber2;
  double pipe1_out = 0.0;  // signed, into chamber 1
  double pipe2_out = 0.0;
  double valve1_net = 0.0;  // signed, at the valve outlet
  double valve2_net = 0.0;
  double leak_between = 0.0;
  double leak_ambient = 0.0;
  double heat1 = 0.0;
  double heat2 = 0.0;
};

struct Evaluation {
  StateVector rate;
  Diagnostics diag;
};

namespace detail {

template <typename F>
auto guarded(const char* subsystem, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvalidStateError& e) {
    throw InvalidStateError(std::string(subsystem) + ": " + e.what());
  } catch (const ContractViolation& e) {
    throw ContractViolation(std::string(subsystem) + ": " + e.what());
  }
}

/// Chamber volumes without the stroke check; RK stages may overshoot a
/// hard stop by a fraction of a step before the post-step clamp.
inline std::pair<double, double> raw_volumes(double x, const CylinderGeometry& g) {
  const double half = 0.5 * g.Lr;
  return {g.V01 + g.A1 * (half + x), g.V02 + g.A2 * (half - x)};
}

}  // namespace detail

/// All module rates at state y and time t. Flow routing: valve i -> pipe i
/// -> chamber i; piston seal leak between the chambers; rod seal leak from
/// chamber 2 to the atmosphere.
inline Evaluation evaluate(const StateVector& y, double t, const DelayLine& pipe1,
                           const DelayLine& pipe2, const Scenario& sc) {
  const Plant& pl = sc.plant;
  const GasProperties& gas = pl.gas;
  const Environment& env = pl.env;
  const CylinderGeometry& cyl = pl.cylinder;

  Evaluation ev;
  StateVector& r = ev.rate;
  Diagnostics& d = ev.diag;

  PistonState piston = y.piston();
  double drive_accel = 0.0;
  if (sc.drive.enabled) {
    piston.x = sc.drive.position(sc.initial.x0, t);
    piston.v = sc.drive.velocity(t);
    drive_accel = sc.drive.acceleration(t);
  }
  const ChamberState ch1 = y.chamber1();
  const ChamberState ch2 = y.chamber2();
  const auto [V1, V2] = detail::raw_volumes(piston.x, cyl);
  const double dV1 = cyl.A1 * piston.v;
  const double dV2 = -cyl.A2 * piston.v;

  const ValveFlows valve1 = detail::guarded("valve 1", [&] {
    return valve_flows(y.spool1(), env.p_sup, ch1.p, env.p_atm, env.T_sup, ch1.T, pl.valve, gas);
  });
  const ValveFlows valve2 = detail::guarded("valve 2", [&] {
    return valve_flows(y.spool2(), env.p_sup, ch2.p, env.p_atm, env.T_sup, ch2.T, pl.valve, gas);
  });
  d.valve1_net = valve1.net();
  d.valve2_net = valve2.net();

  d.pipe1_out = detail::guarded("pipe 1", [&] {
    return propagate(pipe1, t, pl.pipe, ch1.p, ch1.T, gas, std::pair{t, d.valve1_net});
  });
  d.pipe2_out = detail::guarded("pipe 2", [&] {
    return propagate(pipe2, t, pl.pipe, ch2.p, ch2.T, gas, std::pair{t, d.valve2_net});
  });

  const LeakageFlows leak = detail::guarded("leakage", [&] {
    return leakage_flows(ch1, ch2, env.p_atm, env.T_amb, pl.leakage, gas);
  });
  d.leak_between = leak.between;
  d.leak_ambient = leak.to_ambient;

  d.chamber1 = leak.chamber1;
  d.chamber1.add(d.pipe1_out, valve1.T_in);
  d.chamber2 = leak.chamber2;
  d.chamber2.add(d.pipe2_out, valve2.T_in);

  const ThermalParams thermal = pl.thermal();
  d.heat1 = heat_rate(ch1, piston.x, Chamber::advancing, thermal, cyl);
  d.heat2 = heat_rate(ch2, piston.x, Chamber::returning, thermal, cyl);

  detail::guarded("chamber 1", [&] {
    const ChamberFlows& f = d.chamber1;
    r[StateVector::kT1] = temperature_rate(ch1, V1, dV1, f.m_in, f.T_in, f.m_out, d.heat1, gas);
    r[StateVector::kP1] = pressure_rate(ch1, V1, dV1, f.m_in, f.T_in, f.m_out, d.heat1, gas);
  });
  detail::guarded("chamber 2", [&] {
    const ChamberFlows& f = d.chamber2;
    r[StateVector::kT2] = temperature_rate(ch2, V2, dV2, f.m_in, f.T_in, f.m_out, d.heat2, gas);
    r[StateVector::kP2] = pressure_rate(ch2, V2, dV2, f.m_in, f.T_in, f.m_out, d.heat2, gas);
  });

  const LuGreState bristle = y.bristle();
  r[StateVector::kZ] = bristle_rate(piston.v, bristle, pl.friction);
  d.friction = friction_force(piston.v, bristle, pl.friction);

  if (sc.drive.enabled) {
    d.acceleration = drive_accel;
  } else {
    const PistonForces pf = piston_acceleration(piston, ch1, ch2, d.friction, sc.inputs.F_ext(t),
                                                pl.load, cyl, env.p_atm, env.g);
    d.acceleration = pf.acceleration;
    d.hard_stop = pf.hard_stop;
  }
  r[StateVector::kX] = piston.v;
  r[StateVector::kV] = d.acceleration;

  const double travel = pl.valve.x_s_max;
  const SpoolState s1 = y.spool1();
  const SpoolState s2 = y.spool2();
  r[StateVector::kXs1] = s1.v_s;
  r[StateVector::kVs1] = spool_acceleration(s1, sc.inputs.i_c1(t), pl.spool, travel);
  r[StateVector::kXs2] = s2.v_s;
  r[StateVector::kVs2] = spool_acceleration(s2, sc.inputs.i_c2(t), pl.spool, travel);

  r[StateVector::kNet1] = d.chamber1.net();
  r[StateVector::kNet2] = d.chamber2.net();
  r[StateVector::kAtm] = d.leak_ambient;
  return ev;
}

inline StateVector derivative(const SystemState& s, const Scenario& sc) {
  return evaluate(s.y, s.t, s.pipe1, s.pipe2, sc).rate;
}

inline constexpr double kPressureFloor = 10.0;    // [Pa]
inline constexpr double kTemperatureFloor = 1.0;  // [K]

/// Initial state of a scenario: bristles relaxed, spools centred at rest,
/// empty pipe histories sized for the step.
inline SystemState initial_state(const Scenario& sc, double step) {
  SystemState s;
  const InitialConditions& ic = sc.initial;
  s.y[StateVector::kX] = ic.x0;
  s.y[StateVector::kV] = sc.drive.enabled ? sc.drive.velocity(0.0) : ic.v0;
  s.y[StateVector::kP1] = ic.p1;
  s.y[StateVector::kT1] = ic.T1;
  s.y[StateVector::kP2] = ic.p2;
  s.y[StateVector::kT2] = ic.T2;
  s.pipe1 = DelayLine::for_pipe(sc.plant.pipe, step, sc.plant.gas);
  s.pipe2 = DelayLine::for_pipe(sc.plant.pipe, step, sc.plant.gas);
  return s;
}

namespace detail {

/// Hold a chamber's mass and entropy fixed while its volume jumps from
/// v_old to v_new.
inline void adiabatic_remap(double& p, double& temp, double v_old, double v_new, double gamma) {
  const double ratio = v_old / v_new;
  p *= std::pow(ratio, gamma);
  temp *= std::pow(ratio, gamma - 1.0);
}

inline void floor_positive(double& value, double floor, const char* what, double t, double dt) {
  if (!(value > 0.0)) {
    throw InstabilityError(std::string("non-physical ") + what + " = " + std::to_string(value)
                               + " at t=" + std::to_string(t) + " s (dt=" + std::to_string(dt)
                               + " s)",
                           t, dt);
  }
  if (value < floor) value = floor;
}

inline void resolve_events(SystemState& s, const Scenario& sc, double dt) {
  StateVector& y = s.y;
  const CylinderGeometry& cyl = sc.plant.cylinder;

  if (sc.drive.enabled) {
    y[StateVector::kX] = sc.drive.position(sc.initial.x0, s.t);
    y[StateVector::kV] = sc.drive.velocity(s.t);
  } else {
    const double x = y[StateVector::kX];
    const double limit = x > cyl.x_max() ? cyl.x_max() : (x < cyl.x_min() ? cyl.x_min() : x);
    if (limit != x) {
      // Inelastic stop. The chamber gas follows the volume jump
      // adiabatically so no mass is created or lost by the clamp.
      const auto [v1_old, v2_old] = raw_volumes(x, cyl);
      const auto [v1_new, v2_new] = raw_volumes(limit, cyl);
      const double k = sc.plant.gas.gamma();
      adiabatic_remap(y[StateVector::kP1], y[StateVector::kT1], v1_old, v1_new, k);
      adiabatic_remap(y[StateVector::kP2], y[StateVector::kT2], v2_old, v2_new, k);
      y[StateVector::kX] = limit;
      y[StateVector::kV] = 0.0;
    } else if ((x == cyl.x_max() && y[StateVector::kV] > 0.0)
               || (x == cyl.x_min() && y[StateVector::kV] < 0.0)) {
      y[StateVector::kV] = 0.0;
    }
  }

  const double travel = sc.plant.valve.x_s_max;
  for (auto [ix, iv] : {std::pair{StateVector::kXs1, StateVector::kVs1},
                        std::pair{StateVector::kXs2, StateVector::kVs2}}) {
    if (y[ix] > travel) {
      y[ix] = travel;
      if (y[iv] > 0.0) y[iv] = 0.0;
    } else if (y[ix] < -travel) {
      y[ix] = -travel;
      if (y[iv] < 0.0) y[iv] = 0.0;
    }
  }

  if (!y.finite()) {
    throw InstabilityError("non-finite state at t=" + std::to_string(s.t) + " s (dt="
                               + std::to_string(dt) + " s)",
                           s.t, dt);
  }
  floor_positive(y[StateVector::kP1], kPressureFloor, "p1", s.t, dt);
  floor_positive(y[StateVector::kP2], kPressureFloor, "p2", s.t, dt);
  floor_positive(y[StateVector::kT1], kTemperatureFloor, "T1", s.t, dt);
  floor_positive(y[StateVector::kT2], kTemperatureFloor, "T2", s.t, dt);
}

}  // namespace detail

/// One classical RK4 step of size dt, in place. The pipe inlet histories
/// record the valve outlet flow at the step start; every interval must
/// equal dt for the delay lookup to line up.
inline void advance(SystemState& s, double dt, const Scenario& sc) {
  if (!(dt > 0.0)) throw ContractViolation("advance: dt must be positive");
  const double t = s.t;
  const Evaluation e1 = evaluate(s.y, t, s.pipe1, s.pipe2, sc);
  s.pipe1.push(e1.diag.valve1_net);
  s.pipe2.push(e1.diag.valve2_net);

  const StateVector& k1 = e1.rate;
  const StateVector k2 = evaluate(s.y.axpy(0.5 * dt, k1), t + 0.5 * dt, s.pipe1, s.pipe2, sc).rate;
  const StateVector k3 = evaluate(s.y.axpy(0.5 * dt, k2), t + 0.5 * dt, s.pipe1, s.pipe2, sc).rate;
  const StateVector k4 = evaluate(s.y.axpy(dt, k3), t + dt, s.pipe1, s.pipe2, sc).rate;

  StateVector next;
  for (std::size_t i = 0; i < StateVector::kSize; ++i) {
    next[i] = s.y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  s.y = next;
  ++s.steps;
  s.t = static_cast<double>(s.steps) * dt;
  detail::resolve_events(s, sc, dt);
}

inline SystemState step(SystemState s, double dt, const Scenario& sc) {
  advance(s, dt, sc);
  return s;
}

/// One uniformly sampled trace row. Flow columns are chamber-side totals
/// (pipe outlet plus leaks).
struct TraceRow {
  double t, x, v, a, p1, p2, T1, T2;
  double m1_in, m1_out, m2_in, m2_out, ml1, ml2;
  double F_f, F_hs, x_s1, x_s2;
  double m1, m2, m1_net, m2_net;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct TraceColumn {
  const char* name;
  const char* unit;
  double TraceRow::*member;
};

inline constexpr std::array<TraceColumn, 22> kTraceColumns{{
    {"t", "s", &TraceRow::t},           {"x", "m", &TraceRow::x},
    {"v", "m/s", &TraceRow::v},         {"a", "m/s^2", &TraceRow::a},
    {"p1", "Pa", &TraceRow::p1},        {"p2", "Pa", &TraceRow::p2},
    {"T1", "K", &TraceRow::T1},         {"T2", "K", &TraceRow::T2},
    {"m1_in", "kg/s", &TraceRow::m1_in}, {"m1_out", "kg/s", &TraceRow::m1_out},
    {"m2_in", "kg/s", &TraceRow::m2_in}, {"m2_out", "kg/s", &TraceRow::m2_out},
    {"ml1", "kg/s", &TraceRow::ml1},    {"ml2", "kg/s", &TraceRow::ml2},
    {"F_f", "N", &TraceRow::F_f},       {"F_hs", "N", &TraceRow::F_hs},
    {"x_s1", "m", &TraceRow::x_s1},     {"x_s2", "m", &TraceRow::x_s2},
    {"m1", "kg", &TraceRow::m1},        {"m2", "kg", &TraceRow::m2},
    {"m1_net", "kg", &TraceRow::m1_net}, {"m2_net", "kg", &TraceRow::m2_net},
}};

struct Trace {
  std::string scenario;
  std::vector<TraceRow> rows;

  bool empty() const noexcept { return rows.empty(); }
  std::size_t size() const noexcept { return rows.size(); }

  std::vector<double> column(double TraceRow::*member) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.*member);
    return out;
  }

  friend bool operator==(const Trace&, const Trace&) = default;
};

inline TraceRow sample_row(const SystemState& s, double t_report, const Scenario& sc) {
  const Evaluation ev = evaluate(s.y, s.t, s.pipe1, s.pipe2, sc);
  const StateVector& y = s.y;
  const GasProperties& gas = sc.plant.gas;
  const auto [V1, V2] = detail::raw_volumes(y[StateVector::kX], sc.plant.cylinder);
  TraceRow r{};
  r.t = t_report;
  r.x = y[StateVector::kX];
  r.v = y[StateVector::kV];
  r.a = ev.diag.acceleration;
  r.p1 = y[StateVector::kP1];
  r.p2 = y[StateVector::kP2];
  r.T1 = y[StateVector::kT1];
  r.T2 = y[StateVector::kT2];
  r.m1_in = ev.diag.chamber1.m_in;
  r.m1_out = ev.diag.chamber1.m_out;
  r.m2_in = ev.diag.chamber2.m_in;
  r.m2_out = ev.diag.chamber2.m_out;
  r.ml1 = ev.diag.leak_between;
  r.ml2 = ev.diag.leak_ambient;
  r.F_f = ev.diag.friction;
  r.F_hs = ev.diag.hard_stop;
  r.x_s1 = y[StateVector::kXs1];
  r.x_s2 = y[StateVector::kXs2];
  r.m1 = y.chamber1().mass(V1, gas);
  r.m2 = y.chamber2().mass(V2, gas);
  r.m1_net = y[StateVector::kNet1];
  r.m2_net = y[StateVector::kNet2];
  return r;
}

/// Step count per output sample. When dt does not divide the sample
/// interval the step is shortened so the output grid stays exact.
inline std::size_t substeps_per_sample(const IntegratorSettings& it) {
  const double ratio = it.sample_interval / it.dt;
  const double rounded = std::round(ratio);
  if (rounded >= 1.0 && std::abs(ratio - rounded) <= 1e-9 * rounded) {
    return static_cast<std::size_t>(rounded);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

inline std::size_t sample_count(const IntegratorSettings& it) {
  return static_cast<std::size_t>(std::floor(it.duration / it.sample_interval + 1e-9)) + 1;
}

/// Integrate a scenario from its initial conditions. Deterministic: the same
/// scenario always yields the same trace bit for bit.
inline Trace run(const Scenario& sc,
                 const std::function<void(const SystemState&)>& observer = nullptr) {
  sc.validate();
  const IntegratorSettings& it = sc.integrator;
  const std::size_t sub = substeps_per_sample(it);
  const double h = it.sample_interval / static_cast<double>(sub);
  const std::size_t rows = sample_count(it);

  Trace trace;
  trace.scenario = sc.name;
  trace.rows.reserve(rows);
  SystemState s = initial_state(sc, h);
  try {
    trace.rows.push_back(sample_row(s, 0.0, sc));
    for (std::size_t k = 1; k < rows; ++k) {
      for (std::size_t j = 0; j < sub; ++j) {
        advance(s, h, sc);
        if (observer) observer(s);
      }
      trace.rows.push_back(sample_row(s, static_cast<double>(k) * it.sample_interval, sc));
    }
  } catch (const InstabilityError&) {
    throw;
  } catch (const std::domain_error& e) {
    throw InstabilityError("at t=" + std::to_string(s.t) + " s: " + e.what(), s.t, h);
  } catch (const std::logic_error& e) {
    throw InstabilityError("at t=" + std::to_string(s.t) + " s: " + e.what(), s.t, h);
  }
  return trace;
}

}  // namespace servopneu
