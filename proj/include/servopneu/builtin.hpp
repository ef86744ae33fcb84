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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "servopneu/default_parameters.hpp"
#include "servopneu/errors.hpp"
#include "servopneu/scenario.hpp"
#include "servopneu/scenario_io.hpp"

namespace servopneu {

/// The bundled default parameter set as a scenario (no inputs).
inline Scenario default_scenario() {
  Scenario s = apply_scenario_json(Scenario{}, parse_json_text(kDefaultParameters, "defaults"));
  // Inputs in the defaults document are placeholders, not user choices.
  for (const auto& name : signal_names()) s.provenance["inputs." + name] = Provenance::assumed;
  return s;
}

namespace detail {

inline constexpr double kOpenLoopCurrent = 0.5;  // [A]
inline constexpr double kLoadMass = 5.0;         // [kg]
inline constexpr double kPrePressure2 = 815707.0;  // [Pa]

inline Scenario high_speed(std::string name, double i1, double i2, double load,
                           const Scenario& base) {
  Scenario s = base;
  s.name = std::move(name);
  s.description = "High speed run: i_c1 = " + std::to_string(i1) + " A, i_c2 = "
                  + std::to_string(i2) + " A, M_l = " + std::to_string(load) + " kg";
  s.inputs.i_c1 = Signal::constant(i1);
  s.inputs.i_c2 = Signal::constant(i2);
  s.plant.load.M_l = load;
  for (const char* k : {"inputs.i_c1", "inputs.i_c2", "load.M_l"}) s.provenance[k] = Provenance::paper;
  return s;
}

inline Scenario elasticity(std::string name, double force, double duration, bool pressurised,
                           const Scenario& base) {
  Scenario s = base;
  s.name = std::move(name);
  s.description = "Elasticity run: F_ext = " + std::to_string(force) + " N for "
                  + std::to_string(duration) + " s, chambers "
                  + (pressurised ? "pre-pressurised" : "at atmosphere");
  s.inputs.i_c1 = Signal::constant(0.0);
  s.inputs.i_c2 = Signal::constant(0.0);
  s.inputs.F_ext = Signal::pulse(force, 0.0, duration);
  s.initial.p1 = pressurised ? s.plant.env.p_sup : s.plant.env.p_atm;
  s.initial.p2 = pressurised ? kPrePressure2 : s.plant.env.p_atm;
  s.integrator.duration = 0.3;
  for (const char* k : {"inputs.i_c1", "inputs.i_c2", "inputs.F_ext", "initial.p1", "initial.p2"}) {
    s.provenance[k] = Provenance::paper;
  }
  s.provenance["integrator.duration"] = Provenance::assumed;
  return s;
}

}  // namespace detail

/// The twelve open-loop runs: four high-speed runs (table1-a..d) and eight
/// elasticity runs (table2-e..l).
inline std::vector<Scenario> builtin_scenarios() {
  const Scenario base = default_scenario();
  const double i = detail::kOpenLoopCurrent;
  const double m = detail::kLoadMass;
  std::vector<Scenario> out;
  out.push_back(detail::high_speed("table1-a", i, -i, 0.0, base));
  out.push_back(detail::high_speed("table1-b", i, -i, m, base));
  out.push_back(detail::high_speed("table1-c", -i, i, 0.0, base));
  out.push_back(detail::high_speed("table1-d", -i, i, m, base));
  out.push_back(detail::elasticity("table2-e", 20.0, 0.1, false, base));
  out.push_back(detail::elasticity("table2-f", -20.0, 0.1, false, base));
  out.push_back(detail::elasticity("table2-g", 250.0, 0.01, false, base));
  out.push_back(detail::elasticity("table2-h", -250.0, 0.01, false, base));
  out.push_back(detail::elasticity("table2-i", 20.0, 0.1, true, base));
  out.push_back(detail::elasticity("table2-j", -20.0, 0.1, true, base));
  out.push_back(detail::elasticity("table2-k", 250.0, 0.01, true, base));
  out.push_back(detail::elasticity("table2-l", -250.0, 0.01, true, base));
  return out;
}

inline std::optional<Scenario> find_builtin(std::string_view name) {
  if (name == "defaults") return default_scenario();
  for (auto& s : builtin_scenarios()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

/// Parses a scenario document. The optional "base" key names a builtin to
/// start from; otherwise the defaults are the base. The result is validated.
inline Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
  const auto doc = parse_json_text(text, origin);
  Scenario base;
  if (doc.is_object() && doc.contains("base")) {
    if (!doc.at("base").is_string()) throw ParseError(origin + ": 'base' must be a string");
    const auto name = doc.at("base").get<std::string>();
    auto found = find_builtin(name);
    if (!found) throw ParseError(origin + ": unknown base scenario '" + name + "'");
    base = std::move(*found);
  } else {
    base = default_scenario();
  }
  Scenario s;
  try {
    s = apply_scenario_json(std::move(base), doc);
  } catch (const ParseError& e) {
    if (dynamic_cast<const UnknownKeyError*>(&e)) throw UnknownKeyError(origin + ": " + e.what());
    throw ParseError(origin + ": " + e.what());
  }
  s.validate();
  return s;
}

/// Resolves a builtin name or a scenario file path.
inline Scenario parse_scenario(const std::string& source) {
  if (auto b = find_builtin(source)) return *b;
  if (!std::filesystem::exists(source)) {
    throw ParseError("'" + source + "' is neither a builtin scenario nor a readable file");
  }
  return parse_scenario_text(read_text_file(source), source);
}

}  // namespace servopneu
