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
#include <set>

#include "servopneu/servopneu.hpp"
#include "support.hpp"

namespace servopneu {
namespace {

using servopneu::testing::sealed_driven_scenario;

Scenario builtin(const std::string& name) {
  auto s = find_builtin(name);
  EXPECT_TRUE(s.has_value()) << name;
  return *s;
}

TEST(Simulator, RestStateIsAFixedPoint) {
  const Scenario sc = default_scenario();
  SystemState s = initial_state(sc, sc.integrator.dt);
  const StateVector y0 = s.y;
  for (int i = 0; i < 2000; ++i) advance(s, sc.integrator.dt, sc);
  EXPECT_EQ(s.y, y0);
  EXPECT_EQ(s.steps, 2000u);
  EXPECT_DOUBLE_EQ(s.t, 2000 * sc.integrator.dt);
}

TEST(Simulator, SealedChambersFollowAdiabat) {
  const Scenario sc = sealed_driven_scenario(0.05, 10.0, 0.2);
  const Trace t = run(sc);
  const double k = sc.plant.gas.gamma();
  const auto& g = sc.plant.cylinder;
  const auto v0 = chamber_volumes(t.rows.front().x, g);
  const double c1 = t.rows.front().p1 * std::pow(v0.V1, k);
  const double c2 = t.rows.front().p2 * std::pow(v0.V2, k);
  double worst = 0.0;
  for (const auto& r : t.rows) {
    const auto v = chamber_volumes(r.x, g);
    worst = std::max(worst, std::abs(r.p1 * std::pow(v.V1, k) / c1 - 1.0));
    worst = std::max(worst, std::abs(r.p2 * std::pow(v.V2, k) / c2 - 1.0));
    EXPECT_NEAR(r.x, 0.05 * std::sin(2.0 * std::numbers::pi * 10.0 * r.t), 1e-12);
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Simulator, IdenticalRunsAreBitIdentical) {
  const Scenario sc = builtin("table2-h");
  EXPECT_EQ(run(sc), run(sc));
}

TEST(Simulator, ZeroDurationGivesInitialRowOnly) {
  Scenario sc = builtin("table1-a");
  sc.integrator.duration = 0.0;
  const Trace t = run(sc);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.rows[0].t, 0.0);
  EXPECT_EQ(t.rows[0].p1, sc.initial.p1);
}

TEST(Simulator, SampleGrid) {
  IntegratorSettings it{0.1, 1e-5, 1e-3};
  EXPECT_EQ(sample_count(it), 101u);
  EXPECT_EQ(substeps_per_sample(it), 100u);
  it.dt = 3e-4;
  EXPECT_EQ(substeps_per_sample(it), 4u);
}

TEST(Simulator, ObserverSeesEveryStep) {
  Scenario sc = builtin("table1-a");
  sc.integrator.duration = 0.01;
  std::size_t calls = 0;
  run(sc, [&](const SystemState&) { ++calls; });
  EXPECT_EQ(calls, 1000u);
}

TEST(Simulator, RodStopsAtStrokeEnd) {
  const Scenario sc = builtin("table1-a");
  const Trace t = run(sc);
  const auto& last = t.rows.back();
  EXPECT_EQ(last.x, sc.plant.cylinder.x_max());
  EXPECT_EQ(last.v, 0.0);
  EXPECT_GT(last.F_hs, 0.0);
  for (const auto& r : t.rows) {
    EXPECT_LE(r.x, sc.plant.cylinder.x_max());
    EXPECT_GE(r.x, sc.plant.cylinder.x_min());
  }
}

TEST(Simulator, OversizedStepReportsInstability) {
  Scenario sc = builtin("table2-g");
  sc.integrator.dt = 1e-3;
  sc.integrator.sample_interval = 1e-3;
  EXPECT_THROW(run(sc), InstabilityError);
}

TEST(Simulator, InvalidScenarioRejectedBeforeRun) {
  Scenario sc = builtin("table1-a");
  sc.initial.x0 = 0.2;
  EXPECT_THROW(run(sc), InvariantViolation);
}

TEST(Builtins, TwelveDistinctScenarios) {
  const auto all = builtin_scenarios();
  ASSERT_EQ(all.size(), 12u);
  std::set<std::string> names;
  for (const auto& s : all) {
    names.insert(s.name);
    EXPECT_NO_THROW(s.validate()) << s.name;
  }
  EXPECT_EQ(names.size(), 12u);
  EXPECT_TRUE(find_builtin("defaults").has_value());
  EXPECT_FALSE(find_builtin("table3-x").has_value());
}

TEST(Builtins, LoadedHighSpeedRun) {
  const Scenario b = builtin("table1-b");
  EXPECT_EQ(b.plant.load.M_l, 5.0);
  EXPECT_EQ(b.inputs.i_c1(0.1), 0.5);
  EXPECT_EQ(b.inputs.i_c2(0.1), -0.5);
  EXPECT_EQ(b.inputs.F_ext(0.1), 0.0);
  EXPECT_EQ(b.initial.p1, b.plant.env.p_atm);
  EXPECT_EQ(b.provenance.at("load.M_l"), Provenance::paper);
}

TEST(Builtins, PressurisedHit) {
  const Scenario k = builtin("table2-k");
  EXPECT_EQ(k.inputs.F_ext(0.0), 250.0);
  EXPECT_EQ(k.inputs.F_ext(0.0099), 250.0);
  EXPECT_EQ(k.inputs.F_ext(0.01), 0.0);
  EXPECT_EQ(k.inputs.i_c1(0.05), 0.0);
  EXPECT_EQ(k.initial.p1, 701325.0);
  EXPECT_EQ(k.initial.p2, 815707.0);
  EXPECT_EQ(k.plant.load.M_l, 0.0);
}

TEST(Builtins, MirroredRunsHaveOppositeMotion) {
  const auto a = summarize(run(builtin("table1-a")));
  const auto c = summarize(run(builtin("table1-c")));
  EXPECT_GT(a.final_position, 0.0);
  EXPECT_LT(c.final_position, 0.0);
}

TEST(Builtins, PrePressurisedHitsAreStifferAndMoreOscillatory) {
  for (const auto& [free, stiff] : {std::pair{"table2-g", "table2-k"}, std::pair{"table2-h", "table2-l"}}) {
    const RunSummary a = summarize(run(*find_builtin(free)));
    const RunSummary b = summarize(run(*find_builtin(stiff)));
    EXPECT_LT(b.amplitude, a.amplitude) << stiff;
    EXPECT_GT(b.reversals, a.reversals) << stiff;
  }
}

TEST(MassAudit, HighSpeedRunConservesMass) {
  const Scenario sc = builtin("table1-a");
  const auto audit = mass_audit(run(sc));
  EXPECT_LE(audit.total, 1e-4 * sc.integrator.duration);
  EXPECT_LE(audit.chamber1, 1e-4 * sc.integrator.duration);
  EXPECT_LE(audit.chamber2, 1e-4 * sc.integrator.duration);
}

}  // namespace
}  // namespace servopneu
