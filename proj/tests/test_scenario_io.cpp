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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "servopneu/servopneu.hpp"

namespace servopneu {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& leaf) {
  const fs::path p = fs::temp_directory_path() / "servopneu_tests" / leaf;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Trace synthetic_velocity(double duration, double dt) {
  Trace t;
  t.scenario = "synthetic";
  const auto n = static_cast<std::size_t>(std::llround(duration / dt));
  for (std::size_t i = 0; i <= n; ++i) {
    TraceRow r{};
    r.t = static_cast<double>(i) * dt;
    r.v = std::sin(2.0 * std::numbers::pi * r.t);
    r.x = (1.0 - std::cos(2.0 * std::numbers::pi * r.t)) / (2.0 * std::numbers::pi);
    t.rows.push_back(r);
  }
  return t;
}

TEST(ParseScenario, BuiltinByName) {
  const Scenario s = parse_scenario("table1-a");
  EXPECT_EQ(s.name, "table1-a");
  EXPECT_THROW(parse_scenario("no-such-scenario"), ParseError);
}

TEST(ParseScenario, FileWithBaseAndOverrides) {
  const std::string text = R"({
    "schema_version": 1,
    "base": "table1-b",
    "name": "low-supply",
    "env": {"p_sup": {"value": 501325.0, "provenance": "user", "note": "5 bar gauge"}},
    "friction": {"Fc": 9.0},
    "inputs": {"F_ext": {"pulse": {"amplitude": 5.0, "start": 0.01, "duration": 0.02}}}
  })";
  const Scenario s = parse_scenario_text(text, "low.json");
  EXPECT_EQ(s.name, "low-supply");
  EXPECT_EQ(s.plant.env.p_sup, 501325.0);
  EXPECT_EQ(s.plant.friction.Fc, 9.0);
  EXPECT_EQ(s.plant.load.M_l, 5.0);
  EXPECT_EQ(s.inputs.i_c1(0.0), 0.5);
  EXPECT_EQ(s.inputs.F_ext(0.02), 5.0);
  EXPECT_EQ(s.inputs.F_ext(0.03), 0.0);
  EXPECT_EQ(s.provenance.at("env.p_sup"), Provenance::user);
}

TEST(ParseScenario, StepSignal) {
  const Scenario s = parse_scenario_text(
      R"({"inputs": {"i_c1": {"steps": [[0.0, 0.1], [0.05, -0.2]]}, "i_c2": 0.3}})", "steps.json");
  EXPECT_EQ(s.inputs.i_c1(0.01), 0.1);
  EXPECT_EQ(s.inputs.i_c1(0.06), -0.2);
  EXPECT_EQ(s.inputs.i_c2(1.0), 0.3);
}

TEST(ParseScenario, OverlapViolationIsInvariantError) {
  EXPECT_THROW(parse_scenario_text(R"({"valve": {"Rh": 1e-3, "pw": 0.9e-3}})", "bad.json"),
               InvariantViolation);
}

TEST(ParseScenario, UnknownKeyIsReported) {
  try {
    parse_scenario_text(R"({"valve": {"radius": 1e-3}})", "typo.json");
    FAIL() << "expected UnknownKeyError";
  } catch (const UnknownKeyError& e) {
    EXPECT_NE(std::string(e.what()).find("valve.radius"), std::string::npos);
  }
  EXPECT_THROW(parse_scenario_text(R"({"inputs": {"i_c9": 1.0}})", "typo.json"), UnknownKeyError);
}

TEST(ParseScenario, SyntaxErrorNamesLine) {
  try {
    parse_scenario_text("{\n  \"env\": {\n    \"p_sup\": ,\n  }\n}", "broken.json");
    FAIL() << "expected ParseError";
  } catch (const UnknownKeyError&) {
    FAIL() << "wrong error type";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(ParseScenario, RejectsWrongTypesAndSchema) {
  EXPECT_THROW(parse_scenario_text(R"({"env": {"p_sup": "high"}})", "t.json"), ParseError);
  EXPECT_THROW(parse_scenario_text(R"({"schema_version": 99})", "t.json"), ParseError);
  EXPECT_THROW(parse_scenario_text(R"({"base": "nope"})", "t.json"), ParseError);
  EXPECT_THROW(parse_scenario_text(R"([1, 2])", "t.json"), ParseError);
}

TEST(ParseScenario, BundledFilesAreValidAndRunnable) {
  std::size_t n = 0;
  for (const auto& e : std::filesystem::directory_iterator(SERVOPNEU_SCENARIO_DIR)) {
    if (e.path().extension() != ".json") continue;
    ++n;
    Scenario s = parse_scenario(e.path().string());
    s.integrator.duration = 0.01;
    EXPECT_NO_THROW(run(s)) << e.path();
  }
  EXPECT_GE(n, 3u);
}

TEST(Overrides, DottedAssignment) {
  Scenario s = default_scenario();
  apply_override(s, "env.p_sup=6e5");
  EXPECT_EQ(s.plant.env.p_sup, 6e5);
  EXPECT_EQ(s.provenance.at("env.p_sup"), Provenance::user);
  apply_override(s, "inputs.F_ext=12.5");
  EXPECT_EQ(s.inputs.F_ext(0.3), 12.5);
  apply_override(s, "valve.n_holes=2");
  EXPECT_EQ(s.plant.valve.n_holes, 2);
  EXPECT_THROW(apply_override(s, "env.p_sup"), ParseError);
  EXPECT_THROW(apply_override(s, "env.p_sup=abc"), ParseError);
  EXPECT_THROW(apply_override(s, "valve.n_holes=1.5"), ParseError);
  EXPECT_THROW(apply_override(s, "env.nothing=1"), UnknownKeyError);
}

TEST(Serialization, RoundTripsEveryBuiltin) {
  for (const auto& s : builtin_scenarios()) {
    const std::string text = serialize_scenario(s);
    const Scenario back = parse_scenario_text(text, s.name);
    EXPECT_EQ(back, s) << s.name;
    EXPECT_EQ(back.provenance, s.provenance) << s.name;
    EXPECT_EQ(serialize_scenario(back), text) << s.name;
  }
}

TEST(Serialization, EveryRegisteredKeyIsWritten) {
  const auto j = scenario_to_json(default_scenario());
  for (const auto& p : parameter_registry()) {
    const auto dot = p.key.find('.');
    ASSERT_TRUE(j.contains(p.key.substr(0, dot))) << p.key;
    EXPECT_TRUE(j.at(p.key.substr(0, dot)).contains(p.key.substr(dot + 1))) << p.key;
  }
}

TEST(DefaultParameters, ProvenanceTags) {
  const Scenario s = default_scenario();
  EXPECT_EQ(s.provenance.at("env.p_sup"), Provenance::paper);
  EXPECT_EQ(s.provenance.at("friction.Fs"), Provenance::assumed);
  for (const auto& p : parameter_registry()) EXPECT_TRUE(s.provenance.count(p.key)) << p.key;
}

TEST(TraceCsv, HeaderAndRowCount) {
  Scenario sc = *find_builtin("table1-a");
  sc.integrator.duration = 0.1;
  sc.integrator.sample_interval = 1e-3;
  const Trace t = run(sc);
  ASSERT_EQ(t.size(), 101u);
  const std::string csv = trace_to_csv(t);
  EXPECT_EQ(csv.rfind("t[s],x[m],v[m/s],a[m/s^2],p1[Pa],p2[Pa],T1[K],T2[K],", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 102);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(TraceCsv, ReexportIsByteIdentical) {
  Scenario sc = *find_builtin("table2-h");
  sc.integrator.duration = 0.05;
  const Trace t = run(sc);
  const fs::path dir = scratch_dir("reexport");
  export_trace(t, dir / "a.csv");
  const Trace back = import_trace(dir / "a.csv");
  EXPECT_EQ(back.rows, t.rows);
  export_trace(back, dir / "b.csv");
  EXPECT_EQ(read_text_file((dir / "a.csv").string()), read_text_file((dir / "b.csv").string()));
}

TEST(TraceCsv, MalformedInputNamesLine) {
  std::string csv = trace_header() + "\n1,2,3\n";
  try {
    trace_from_csv(csv, "bad.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(trace_from_csv("x,y\n", "bad.csv"), ParseError);
}

TEST(Summary, RecomputedFromReimportedTrace) {
  const Trace t = run(*find_builtin("table2-g"));
  const fs::path dir = scratch_dir("summary");
  export_trace(t, dir / "g.csv");
  const auto a = summarize(t);
  const auto b = summarize(import_trace(dir / "g.csv"));
  EXPECT_EQ(a.max_speed, b.max_speed);
  EXPECT_EQ(a.dead_time, b.dead_time);
  EXPECT_EQ(a.peak_p1, b.peak_p1);
  EXPECT_EQ(a.peak_p2, b.peak_p2);
  EXPECT_EQ(a.final_position, b.final_position);
  EXPECT_EQ(a.reversals, b.reversals);
  EXPECT_EQ(a.amplitude, b.amplitude);
}

TEST(Summary, ConstantRestTrace) {
  Trace t;
  for (int i = 0; i < 50; ++i) {
    TraceRow r{};
    r.t = i * 1e-3;
    r.p1 = r.p2 = 101325.0;
    t.rows.push_back(r);
  }
  const auto s = summarize(t);
  EXPECT_EQ(s.max_speed, 0.0);
  EXPECT_EQ(s.reversals, 0);
  EXPECT_FALSE(s.dead_time.has_value());
  EXPECT_EQ(s.amplitude, 0.0);
}

TEST(Summary, SineVelocityReversals) {
  // One period: + then -, a single interior reversal.
  const auto one = summarize(synthetic_velocity(1.0, 1e-3));
  EXPECT_NEAR(one.max_speed, 1.0, 1e-6);
  EXPECT_EQ(one.reversals, 1);
  // Five quarter periods: + - +.
  EXPECT_EQ(summarize(synthetic_velocity(1.25, 1e-3)).reversals, 2);
  EXPECT_NEAR(one.amplitude, 1.0 / std::numbers::pi, 1e-6);
  EXPECT_FALSE(one.dead_time.has_value());
}

TEST(Summary, DeadTimeIsFirstMotion) {
  Trace t;
  for (int i = 0; i < 100; ++i) {
    TraceRow r{};
    r.t = i * 1e-3;
    r.v = i >= 20 ? 0.01 : 0.0;
    t.rows.push_back(r);
  }
  const auto s = summarize(t);
  ASSERT_TRUE(s.dead_time.has_value());
  EXPECT_DOUBLE_EQ(*s.dead_time, 0.02);
}

TEST(Summary, ReversalHysteresis) {
  const std::vector<double> noisy{0.0, 5e-4, -5e-4, 5e-4, 0.2, 0.1, -0.002, 0.3, -0.3};
  EXPECT_EQ(count_reversals(noisy), 3);
  EXPECT_EQ(count_reversals(noisy, reversal_band(0.3)), 1);
}

TEST(Plot, ThreeLabelledPanels) {
  Scenario sc = *find_builtin("table1-c");
  sc.integrator.duration = 0.05;
  const Trace t = run(sc);
  const std::string svg = trace_to_svg(t);
  EXPECT_NE(svg.find("<svg "), std::string::npos);
  std::size_t panels = 0;
  for (auto p = svg.find("class=\"panel\""); p != std::string::npos;
       p = svg.find("class=\"panel\"", p + 1)) {
    ++panels;
  }
  EXPECT_EQ(panels, 3u);
  for (const char* label : {"displacement", "velocity", "pressure"}) {
    EXPECT_NE(svg.find(label), std::string::npos) << label;
  }
  const fs::path dir = scratch_dir("plot") / "nested" / "deeper";
  emit_plot(t, dir / "c.svg");
  EXPECT_TRUE(fs::exists(dir / "c.svg"));
}

TEST(MassAudit, EveryBuiltinConservesMass) {
  for (const auto& sc : builtin_scenarios()) {
    const auto a = mass_audit(run(sc));
    EXPECT_LE(a.total, 1e-4 * sc.integrator.duration) << sc.name;
  }
}

}  // namespace
}  // namespace servopneu
