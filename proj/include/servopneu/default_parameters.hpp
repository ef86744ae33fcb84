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

// Bundled default parameter set. Every value is tagged "paper" (stated for
// the reference rig) or "assumed" (datasheet-plausible choice for a 25 mm
// bore, 10 mm rod low-friction cylinder with two 3/3 proportional valves).

namespace servopneu {

inline constexpr const char* kDefaultParameters = R"json({
  "schema_version": 1,
  "name": "defaults",
  "description": "Bundled default parameter set",
  "env": {
    "p_atm": {"value": 101325.0, "provenance": "paper", "note": "1 atm"},
    "T_amb": {"value": 293.15, "provenance": "paper", "note": "20 degC"},
    "p_sup": {"value": 701325.0, "provenance": "paper"},
    "T_sup": {"value": 293.15, "provenance": "assumed", "note": "supply tank at ambient"},
    "g": {"value": 9.81, "provenance": "assumed"}
  },
  "gas": {
    "cp": {"value": 1004.5, "provenance": "assumed", "note": "air, R = 287"},
    "cv": {"value": 717.5, "provenance": "assumed", "note": "air, gamma = 1.4"},
    "mu": {"value": 1.8e-5, "provenance": "assumed", "note": "air at 20 degC"}
  },
  "cylinder": {
    "A1": {"value": 4.908738521234052e-4, "provenance": "assumed", "note": "25 mm bore"},
    "A2": {"value": 4.123340357836604e-4, "provenance": "assumed", "note": "10 mm rod"},
    "Lr": {"value": 0.2, "provenance": "assumed"},
    "V01": {"value": 3.0e-6, "provenance": "assumed"},
    "V02": {"value": 3.0e-6, "provenance": "assumed"},
    "da": {"value": 0.032, "provenance": "assumed"},
    "phi": {"value": 0.0, "provenance": "assumed", "note": "horizontal"}
  },
  "friction": {
    "sigma0": {"value": 1.0e5, "provenance": "assumed"},
    "sigma1": {"value": 1500.0, "provenance": "assumed"},
    "sigma2": {"value": 3.0, "provenance": "assumed"},
    "Fc": {"value": 10.0, "provenance": "assumed"},
    "Fs": {"value": 14.0, "provenance": "assumed"},
    "vs": {"value": 0.03, "provenance": "assumed"},
    "stribeck_exponent": {"value": 2, "provenance": "assumed"}
  },
  "thermal": {
    "lambda0": {"value": 100.0, "provenance": "assumed"}
  },
  "leakage": {
    "A_l1": {"value": 2.0e-8, "provenance": "assumed"},
    "A_l2": {"value": 5.0e-9, "provenance": "assumed"},
    "c_dl": {"value": 0.8, "provenance": "assumed"}
  },
  "load": {
    "M_l": {"value": 0.0, "provenance": "paper"},
    "M_p": {"value": 0.1, "provenance": "assumed"}
  },
  "pipe": {
    "Lt": {"value": 0.5, "provenance": "assumed"},
    "D": {"value": 4.0e-3, "provenance": "assumed"},
    "e_r": {"value": 1.5e-6, "provenance": "assumed", "note": "drawn tubing"}
  },
  "valve": {
    "Rh": {"value": 0.75e-3, "provenance": "assumed"},
    "pw": {"value": 0.8e-3, "provenance": "assumed"},
    "n_holes": {"value": 1, "provenance": "assumed"},
    "c_d": {"value": 0.8, "provenance": "assumed"},
    "x_s_max": {"value": 1.705e-3, "provenance": "assumed", "note": "(pw + Rh) + 10%"}
  },
  "spool": {
    "Ms": {"value": 0.01, "provenance": "assumed"},
    "cs": {"value": 6.0, "provenance": "assumed"},
    "ks": {"value": 1000.0, "provenance": "assumed"},
    "Ksol": {"value": 6.324, "provenance": "assumed"}
  },
  "initial": {
    "x0": {"value": 0.0, "provenance": "assumed", "note": "midstroke"},
    "v0": {"value": 0.0, "provenance": "assumed"},
    "p1": {"value": 101325.0, "provenance": "paper"},
    "p2": {"value": 101325.0, "provenance": "paper"},
    "T1": {"value": 293.15, "provenance": "assumed"},
    "T2": {"value": 293.15, "provenance": "assumed"}
  },
  "integrator": {
    "duration": {"value": 0.2, "provenance": "assumed"},
    "dt": {"value": 1.0e-5, "provenance": "assumed"},
    "sample_interval": {"value": 1.0e-4, "provenance": "assumed"}
  },
  "drive": {
    "enabled": {"value": false, "provenance": "assumed"},
    "amplitude": {"value": 0.0, "provenance": "assumed"},
    "frequency": {"value": 0.0, "provenance": "assumed"}
  },
  "inputs": {
    "i_c1": 0.0,
    "i_c2": 0.0,
    "F_ext": 0.0
  }
})json";

}  // namespace servopneu
