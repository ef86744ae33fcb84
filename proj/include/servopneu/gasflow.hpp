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
#include <string>

#include "servopneu/errors.hpp"

namespace servopneu {

/// Ideal gas with constant specific heats. R and gamma are reconstructed
/// from cp and cv so the two can never disagree.
class GasProperties {
 public:
  GasProperties() = default;

  static GasProperties from_specific_heats(double cp, double cv, double mu) {
    GasProperties g;
    g.cp_ = cp;
    g.cv_ = cv;
    g.mu_ = mu;
    g.validate();
    return g;
  }

  /// Builds without the invariant check; used while a parameter set is
  /// still being assembled. Call validate() before use.
  static GasProperties unchecked(double cp, double cv, double mu) {
    GasProperties g;
    g.cp_ = cp;
    g.cv_ = cv;
    g.mu_ = mu;
    return g;
  }

  static GasProperties from_r_gamma(double r, double gamma, double mu) {
    const double cv = r / (gamma - 1.0);
    return from_specific_heats(gamma * cv, cv, mu);
  }

  /// Dry air, R = 287 J/(kg K), gamma = 1.4, mu = 1.8e-5 Pa s.
  static GasProperties air() { return from_specific_heats(1004.5, 717.5, 1.8e-5); }

  double cp() const noexcept { return cp_; }
  double cv() const noexcept { return cv_; }
  double mu() const noexcept { return mu_; }
  double R() const noexcept { return cp_ - cv_; }
  double gamma() const noexcept { return cp_ / cv_; }

  void validate() const {
    if (!(cv_ > 0.0) || !(cp_ > cv_) || !(mu_ > 0.0)) {
      throw InvariantViolation("GasProperties: require cp > cv > 0 and mu > 0");
    }
  }

  friend bool operator==(const GasProperties&, const GasProperties&) = default;

 private:
  double cp_ = 1004.5;
  double cv_ = 717.5;
  double mu_ = 1.8e-5;
};

struct OrificeSpec {
  double area = 0.0;             // [m^2]
  double discharge_coeff = 1.0;  // [-]

  void validate() const {
    if (!(area >= 0.0) || !(discharge_coeff > 0.0) || discharge_coeff > 1.0) {
      throw InvariantViolation("OrificeSpec: require area >= 0 and 0 < c_d <= 1");
    }
  }
};

/// Downstream/upstream pressure ratio at which a convergent nozzle chokes,
/// (2/(gamma+1))^(gamma/(gamma-1)). About 0.528 for air.
inline double critical_pressure_ratio(const GasProperties& gas) {
  const double k = gas.gamma();
  return std::pow(2.0 / (k + 1.0), k / (k - 1.0));
}

namespace detail {

inline double subsonic_flux(double ratio, double t_u, const GasProperties& gas) {
  const double k = gas.gamma();
  const double bracket = std::pow(ratio, 2.0 / k) - std::pow(ratio, (k + 1.0) / k);
  return std::sqrt(2.0 * k / (gas.R() * t_u * (k - 1.0)) * std::max(bracket, 0.0));
}

inline double sonic_flux(double t_u, const GasProperties& gas) {
  const double k = gas.gamma();
  return std::sqrt(k / (gas.R() * t_u) * std::pow(2.0 / (k + 1.0), (k + 1.0) / (k - 1.0)));
}

}  // namespace detail

/// Isentropic convergent-nozzle mass flow [kg/s] from (p_u, T_u) to p_d.
/// The caller orients the flow; p_d > p_u is a contract violation.
inline double nozzle_mass_flow(const OrificeSpec& orifice, double p_u, double t_u, double p_d,
                               const GasProperties& gas) {
  if (!(p_u > 0.0) || !(t_u > 0.0)) {
    throw InvalidStateError("nozzle_mass_flow: upstream pressure and temperature must be positive");
  }
  if (!(p_d >= 0.0)) {
    throw InvalidStateError("nozzle_mass_flow: downstream pressure must be non-negative");
  }
  if (p_d > p_u) {
    throw ContractViolation("nozzle_mass_flow: downstream pressure exceeds upstream ("
                            + std::to_string(p_d) + " > " + std::to_string(p_u) + ")");
  }
  if (orifice.area == 0.0) return 0.0;

  const double ratio = p_d / p_u;
  const double scale = p_u * orifice.discharge_coeff * orifice.area;
  if (ratio > critical_pressure_ratio(gas)) {
    return scale * detail::subsonic_flux(ratio, t_u, gas);
  }
  return scale * detail::sonic_flux(t_u, gas);
}

/// Signed flow between two reservoirs, positive from `a` to `b`. Picks the
/// higher pressure as upstream.
inline double oriented_mass_flow(const OrificeSpec& orifice, double p_a, double t_a, double p_b,
                                 double t_b, const GasProperties& gas) {
  if (p_a >= p_b) return nozzle_mass_flow(orifice, p_a, t_a, p_b, gas);
  return -nozzle_mass_flow(orifice, p_b, t_b, p_a, gas);
}

inline double sound_speed(double temperature, const GasProperties& gas) {
  if (!(temperature > 0.0)) {
    throw InvalidStateError("sound_speed: temperature must be positive");
  }
  return std::sqrt(gas.gamma() * gas.R() * temperature);
}

}  // namespace servopneu
