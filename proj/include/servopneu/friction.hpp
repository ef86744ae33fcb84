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

#include "servopneu/errors.hpp"

namespace servopneu {

// LuGre friction: F_f = sigma0 z + sigma1 dz/dt + sigma2 v, with the bristle
// deflection z relaxing toward g(v) sign(v) / sigma0.

struct LuGreParams {
  double sigma0 = 1.0e5;  // bristle stiffness [N/m]
  double sigma1 = 100.0;  // bristle damping [N s/m]
  double sigma2 = 10.0;   // viscous coefficient [N s/m]
  double Fc = 5.0;        // Coulomb level [N]
  double Fs = 8.0;        // static level [N]
  double vs = 0.01;       // Stribeck velocity [m/s]
  int stribeck_exponent = 2;

  void validate() const {
    if (!(sigma0 >= 0.0) || !(sigma1 >= 0.0) || !(sigma2 >= 0.0)) {
      throw InvariantViolation("LuGreParams: sigma0, sigma1, sigma2 must be non-negative");
    }
    if (!(Fc > 0.0) || !(Fs >= Fc)) {
      throw InvariantViolation("LuGreParams: require 0 < Fc <= Fs");
    }
    if (!(vs > 0.0)) throw InvariantViolation("LuGreParams: Stribeck velocity must be positive");
    if (stribeck_exponent != 1 && stribeck_exponent != 2) {
      throw InvariantViolation("LuGreParams: Stribeck exponent must be 1 or 2");
    }
  }

  friend bool operator==(const LuGreParams&, const LuGreParams&) = default;
};

struct LuGreState {
  double z = 0.0;  // bristle deflection [m]
};

/// Stribeck curve g(v), always within [Fc, Fs].
inline double stribeck(double v, const LuGreParams& p) {
  const double s = std::abs(v) / p.vs;
  const double arg = p.stribeck_exponent == 2 ? s * s : s;
  return p.Fc + (p.Fs - p.Fc) * std::exp(-arg);
}

inline double bristle_rate(double v, const LuGreState& state, const LuGreParams& p) {
  return v - p.sigma0 * std::abs(v) * state.z / stribeck(v, p);
}

inline double friction_force(double v, const LuGreState& state, const LuGreParams& p) {
  const double zdot = bristle_rate(v, state, p);
  return p.sigma0 * state.z + p.sigma1 * zdot + p.sigma2 * v;
}

/// Bristle deflection at which dz/dt = 0 for a constant velocity.
inline double steady_bristle(double v, const LuGreParams& p) {
  if (v == 0.0 || p.sigma0 == 0.0) return 0.0;
  return std::copysign(stribeck(v, p), v) / p.sigma0;
}

}  // namespace servopneu
