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

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "servopneu/errors.hpp"
#include "servopneu/scenario.hpp"

namespace servopneu {

inline constexpr int kScenarioSchemaVersion = 1;

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::paper: return "paper";
    case Provenance::assumed: return "assumed";
    case Provenance::user: return "user";
  }
  return "user";
}

inline Provenance provenance_from_string(std::string_view s) {
  if (s == "paper") return Provenance::paper;
  if (s == "assumed") return Provenance::assumed;
  if (s == "user") return Provenance::user;
  throw ParseError("unknown provenance '" + std::string(s) + "'");
}

/// One scalar, addressable by dotted key ("valve.Rh").
struct ParameterInfo {
  std::string key;
  std::string unit;
  bool integral = false;
  std::function<double(const Scenario&)> get;
  std::function<void(Scenario&, double)> set;
};

namespace detail {

template <typename Ref>
ParameterInfo real_param(std::string key, std::string unit, Ref ref) {
  return {std::move(key), std::move(unit), false,
          [ref](const Scenario& s) { return ref(const_cast<Scenario&>(s)); },
          [ref](Scenario& s, double v) { ref(s) = v; }};
}

template <typename Ref>
ParameterInfo int_param(std::string key, Ref ref) {
  return {std::move(key), "-", true,
          [ref](const Scenario& s) { return static_cast<double>(ref(const_cast<Scenario&>(s))); },
          [ref](Scenario& s, double v) { ref(s) = static_cast<int>(v); }};
}

inline std::vector<ParameterInfo> build_registry() {
  std::vector<ParameterInfo> r;
#define SP_REAL(key, unit, expr) \
  r.push_back(real_param(key, unit, [](Scenario& s) -> double& { return expr; }))
  SP_REAL("env.p_atm", "Pa", s.plant.env.p_atm);
  SP_REAL("env.T_amb", "K", s.plant.env.T_amb);
  SP_REAL("env.p_sup", "Pa", s.plant.env.p_sup);
  SP_REAL("env.T_sup", "K", s.plant.env.T_sup);
  SP_REAL("env.g", "m/s^2", s.plant.env.g);

  r.push_back({"gas.cp", "J/(kg K)", false, [](const Scenario& s) { return s.plant.gas.cp(); },
               [](Scenario& s, double v) {
                 const auto& g = s.plant.gas;
                 s.plant.gas = GasProperties::unchecked(v, g.cv(), g.mu());
               }});
  r.push_back({"gas.cv", "J/(kg K)", false, [](const Scenario& s) { return s.plant.gas.cv(); },
               [](Scenario& s, double v) {
                 const auto& g = s.plant.gas;
                 s.plant.gas = GasProperties::unchecked(g.cp(), v, g.mu());
               }});
  r.push_back({"gas.mu", "Pa s", false, [](const Scenario& s) { return s.plant.gas.mu(); },
               [](Scenario& s, double v) {
                 const auto& g = s.plant.gas;
                 s.plant.gas = GasProperties::unchecked(g.cp(), g.cv(), v);
               }});

  SP_REAL("cylinder.A1", "m^2", s.plant.cylinder.A1);
  SP_REAL("cylinder.A2", "m^2", s.plant.cylinder.A2);
  SP_REAL("cylinder.Lr", "m", s.plant.cylinder.Lr);
  SP_REAL("cylinder.V01", "m^3", s.plant.cylinder.V01);
  SP_REAL("cylinder.V02", "m^3", s.plant.cylinder.V02);
  SP_REAL("cylinder.da", "m", s.plant.cylinder.da);
  SP_REAL("cylinder.phi", "rad", s.plant.cylinder.phi);

  SP_REAL("friction.sigma0", "N/m", s.plant.friction.sigma0);
  SP_REAL("friction.sigma1", "N s/m", s.plant.friction.sigma1);
  SP_REAL("friction.sigma2", "N s/m", s.plant.friction.sigma2);
  SP_REAL("friction.Fc", "N", s.plant.friction.Fc);
  SP_REAL("friction.Fs", "N", s.plant.friction.Fs);
  SP_REAL("friction.vs", "m/s", s.plant.friction.vs);
  r.push_back(int_param("friction.stribeck_exponent",
                        [](Scenario& s) -> int& { return s.plant.friction.stribeck_exponent; }));

  SP_REAL("thermal.lambda0", "W/(m^2 K)", s.plant.lambda0);

  SP_REAL("leakage.A_l1", "m^2", s.plant.leakage.A_l1);
  SP_REAL("leakage.A_l2", "m^2", s.plant.leakage.A_l2);
  SP_REAL("leakage.c_dl", "-", s.plant.leakage.c_dl);

  SP_REAL("load.M_l", "kg", s.plant.load.M_l);
  SP_REAL("load.M_p", "kg", s.plant.load.M_p);

  SP_REAL("pipe.Lt", "m", s.plant.pipe.Lt);
  SP_REAL("pipe.D", "m", s.plant.pipe.D);
  SP_REAL("pipe.e_r", "m", s.plant.pipe.e_r);

  SP_REAL("valve.Rh", "m", s.plant.valve.Rh);
  SP_REAL("valve.pw", "m", s.plant.valve.pw);
  r.push_back(int_param("valve.n_holes", [](Scenario& s) -> int& { return s.plant.valve.n_holes; }));
  SP_REAL("valve.c_d", "-", s.plant.valve.c_d);
  SP_REAL("valve.x_s_max", "m", s.plant.valve.x_s_max);

  SP_REAL("spool.Ms", "kg", s.plant.spool.Ms);
  SP_REAL("spool.cs", "N s/m", s.plant.spool.cs);
  SP_REAL("spool.ks", "N/m", s.plant.spool.ks);
  SP_REAL("spool.Ksol", "N/A", s.plant.spool.Ksol);

  SP_REAL("initial.x0", "m", s.initial.x0);
  SP_REAL("initial.v0", "m/s", s.initial.v0);
  SP_REAL("initial.p1", "Pa", s.initial.p1);
  SP_REAL("initial.p2", "Pa", s.initial.p2);
  SP_REAL("initial.T1", "K", s.initial.T1);
  SP_REAL("initial.T2", "K", s.initial.T2);

  SP_REAL("integrator.duration", "s", s.integrator.duration);
  SP_REAL("integrator.dt", "s", s.integrator.dt);
  SP_REAL("integrator.sample_interval", "s", s.integrator.sample_interval);

  r.push_back({"drive.enabled", "-", true,
               [](const Scenario& s) { return s.drive.enabled ? 1.0 : 0.0; },
               [](Scenario& s, double v) { s.drive.enabled = v != 0.0; }});
  SP_REAL("drive.amplitude", "m", s.drive.amplitude);
  SP_REAL("drive.frequency", "Hz", s.drive.frequency);
#undef SP_REAL
  return r;
}

}  // namespace detail

inline const std::vector<ParameterInfo>& parameter_registry() {
  static const std::vector<ParameterInfo> registry = detail::build_registry();
  return registry;
}

inline const ParameterInfo* find_parameter(std::string_view key) {
  for (const auto& p : parameter_registry()) {
    if (p.key == key) return &p;
  }
  return nullptr;
}

inline const std::vector<std::string>& signal_names() {
  static const std::vector<std::string> names{"i_c1", "i_c2", "F_ext"};
  return names;
}

inline Signal& signal_ref(Scenario& s, std::string_view name) {
  if (name == "i_c1") return s.inputs.i_c1;
  if (name == "i_c2") return s.inputs.i_c2;
  if (name == "F_ext") return s.inputs.F_ext;
  throw UnknownKeyError("unknown input signal '" + std::string(name) + "'");
}

inline const Signal& signal_ref(const Scenario& s, std::string_view name) {
  return signal_ref(const_cast<Scenario&>(s), name);
}

/// Sets a registered parameter, checking integral keys.
inline void set_parameter(Scenario& s, std::string_view key, double value, Provenance origin) {
  const ParameterInfo* p = find_parameter(key);
  if (!p) throw UnknownKeyError("unknown parameter key '" + std::string(key) + "'");
  if (!std::isfinite(value)) {
    throw ParseError("parameter '" + std::string(key) + "': value must be finite");
  }
  if (p->integral && value != std::floor(value)) {
    throw ParseError("parameter '" + std::string(key) + "': expected an integer");
  }
  p->set(s, value);
  s.provenance[std::string(key)] = origin;
}

namespace detail {

using json = nlohmann::json;

inline double parse_number(std::string_view text, std::string_view context) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(std::string(context) + ": '" + std::string(text) + "' is not a number");
  }
  return v;
}

inline Signal signal_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return Signal::constant(j.get<double>());
  if (!j.is_object()) throw ParseError(where + ": expected a number or an object");
  for (const auto& [k, _] : j.items()) {
    if (k != "pulse" && k != "steps" && k != "provenance") {
      throw UnknownKeyError(where + ": unknown key '" + k + "'");
    }
  }
  if (j.contains("pulse")) {
    const json& p = j.at("pulse");
    for (const auto& [k, _] : p.items()) {
      if (k != "amplitude" && k != "start" && k != "duration") {
        throw UnknownKeyError(where + ".pulse: unknown key '" + k + "'");
      }
    }
    try {
      return Signal::pulse(p.at("amplitude").get<double>(), p.value("start", 0.0),
                           p.at("duration").get<double>());
    } catch (const json::exception& e) {
      throw ParseError(where + ".pulse: " + e.what());
    }
  }
  if (j.contains("steps")) {
    std::vector<Signal::Step> steps;
    for (const auto& pt : j.at("steps")) {
      if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
        throw ParseError(where + ".steps: each entry must be [time, value]");
      }
      steps.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    return Signal(std::move(steps));
  }
  throw ParseError(where + ": expected 'pulse' or 'steps'");
}

inline json signal_to_json(const Signal& s, Provenance origin) {
  json steps = json::array();
  for (const auto& st : s.steps()) steps.push_back({st.time, st.value});
  return json{{"steps", steps}, {"provenance", to_string(origin)}};
}

inline void apply_parameter_tree(Scenario& s, const json& node, const std::string& prefix) {
  for (const auto& [k, v] : node.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object() && !v.contains("value")) {
      apply_parameter_tree(s, v, key);
      continue;
    }
    Provenance origin = Provenance::user;
    const json* value = &v;
    if (v.is_object()) {
      for (const auto& [field, _] : v.items()) {
        if (field != "value" && field != "provenance" && field != "note") {
          throw UnknownKeyError("parameter '" + key + "': unknown field '" + field + "'");
        }
      }
      value = &v.at("value");
      if (v.contains("provenance")) {
        origin = provenance_from_string(v.at("provenance").get<std::string>());
      }
    }
    double number = 0.0;
    if (value->is_boolean()) number = value->get<bool>() ? 1.0 : 0.0;
    else if (value->is_number()) number = value->get<double>();
    else throw ParseError("parameter '" + key + "': expected a number");
    set_parameter(s, key, number, origin);
  }
}

inline std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

/// Applies a scenario document on top of `base`. Reserved top-level keys:
/// schema_version, base (resolved by the caller), name, description, inputs.
/// Every other top-level object is a parameter group.
inline Scenario apply_scenario_json(Scenario s, const nlohmann::json& doc) {
  using detail::json;
  if (!doc.is_object()) throw ParseError("scenario: top level must be an object");
  if (doc.contains("schema_version")) {
    if (!doc.at("schema_version").is_number_integer()
        || doc.at("schema_version").get<int>() != kScenarioSchemaVersion) {
      throw ParseError("scenario: unsupported schema_version (expected "
                       + std::to_string(kScenarioSchemaVersion) + ")");
    }
  }
  for (const auto& [k, v] : doc.items()) {
    if (k == "schema_version" || k == "base") continue;
    if (k == "name" || k == "description") {
      if (!v.is_string()) throw ParseError("scenario: '" + k + "' must be a string");
      (k == "name" ? s.name : s.description) = v.get<std::string>();
    } else if (k == "inputs") {
      if (!v.is_object()) throw ParseError("scenario: 'inputs' must be an object");
      for (const auto& [name, sig] : v.items()) {
        signal_ref(s, name) = detail::signal_from_json(sig, "inputs." + name);
        Provenance origin = Provenance::user;
        if (sig.is_object() && sig.contains("provenance")) {
          if (!sig.at("provenance").is_string()) {
            throw ParseError("inputs." + name + ": 'provenance' must be a string");
          }
          origin = provenance_from_string(sig.at("provenance").get<std::string>());
        }
        s.provenance["inputs." + name] = origin;
      }
    } else if (v.is_object()) {
      detail::apply_parameter_tree(s, v, k);
    } else {
      throw UnknownKeyError("scenario: unknown top-level key '" + k + "'");
    }
  }
  return s;
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": " + detail::locate(text, e.byte) + ": " + e.what());
  }
}

/// Full, self-describing document: every registered parameter with its
/// provenance, and every input signal as explicit steps.
inline nlohmann::json scenario_to_json(const Scenario& s) {
  using detail::json;
  json doc;
  doc["schema_version"] = kScenarioSchemaVersion;
  doc["name"] = s.name;
  doc["description"] = s.description;
  for (const auto& p : parameter_registry()) {
    const auto dot = p.key.find('.');
    const std::string group = p.key.substr(0, dot);
    const std::string field = p.key.substr(dot + 1);
    const auto it = s.provenance.find(p.key);
    const Provenance origin = it == s.provenance.end() ? Provenance::user : it->second;
    json leaf{{"provenance", to_string(origin)}};
    const double v = p.get(s);
    if (p.key == "drive.enabled") leaf["value"] = v != 0.0;
    else if (p.integral) leaf["value"] = static_cast<long long>(v);
    else leaf["value"] = v;
    doc[group][field] = leaf;
  }
  for (const auto& name : signal_names()) {
    const auto it = s.provenance.find("inputs." + name);
    doc["inputs"][name] = detail::signal_to_json(
        signal_ref(s, name), it == s.provenance.end() ? Provenance::user : it->second);
  }
  return doc;
}

inline std::string serialize_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

/// Parses "key=value" from the command line. Input signal keys
/// (inputs.i_c1, ...) take a constant value.
inline void apply_override(Scenario& s, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ParseError("override '" + std::string(assignment) + "': expected key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const double value = detail::parse_number(assignment.substr(eq + 1), "override '" + key + "'");
  if (key.rfind("inputs.", 0) == 0) {
    signal_ref(s, key.substr(7)) = Signal::constant(value);
    s.provenance[key] = Provenance::user;
    return;
  }
  set_parameter(s, key, value, Provenance::user);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace servopneu
