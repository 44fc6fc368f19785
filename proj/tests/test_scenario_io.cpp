// Copyright 2026 The swmpc Authors
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

#include "swmpc/scenario_io.hpp"

#include <gtest/gtest.h>

namespace swmpc {
namespace {

using nlohmann::json;

TEST(ScenarioIoTest, PolytopeRoundTrip) {
  const Polytope P = Polytope::capped_orthant(3, 5.0);
  const Polytope Q = polytope_from_json(polytope_to_json(P));
  EXPECT_EQ(P.H(), Q.H());
  EXPECT_EQ(P.h(), Q.h());
  const PolytopeUnion U({Polytope::box(2, 1.0), Polytope::origin(2)});
  const PolytopeUnion V = union_from_json(union_to_json(U));
  ASSERT_EQ(V.size(), 2u);
  EXPECT_EQ(V.parts[1].h(), U.parts[1].h());
  EXPECT_EQ(union_from_json(polytope_to_json(P)).size(), 1u);
}

TEST(ScenarioIoTest, BuiltinsRoundTrip) {
  for (const auto& name : builtin_scenario_names()) {
    const Scenario s = builtin_scenario(name);
    const json doc = json::parse(scenario_to_json(s).dump());
    const Scenario t = scenario_from_json(doc);
    EXPECT_EQ(t.name, s.name);
    EXPECT_EQ(t.kind, s.kind);
    ASSERT_EQ(t.system.q(), s.system.q());
    for (int i = 0; i < s.system.q(); ++i) {
      EXPECT_EQ(t.system.matrix(i), s.system.matrix(i));
      EXPECT_EQ(t.system.waiting()[i].lower, s.system.waiting()[i].lower);
      EXPECT_EQ(t.system.waiting()[i].upper, s.system.waiting()[i].upper);
    }
    EXPECT_EQ(t.x0, s.x0);
    EXPECT_EQ(t.tau_days, s.tau_days);
    EXPECT_EQ(t.horizon_steps, s.horizon_steps);
    EXPECT_EQ(t.prediction_horizon, s.prediction_horizon);
    EXPECT_EQ(t.enforce_terminal, s.enforce_terminal);
    EXPECT_EQ(t.enforce_cycle, s.enforce_cycle);
    EXPECT_EQ(t.cost.stage, s.cost.stage);
    EXPECT_EQ(t.labels, s.labels);
    EXPECT_EQ(t.target.parts[0].H(), s.target.parts[0].H());
    EXPECT_EQ(t.system.state_set().h(), s.system.state_set().h());
  }
}

TEST(ScenarioIoTest, MinimalCustomDocument) {
  const json doc = json::parse(R"({
    "kind": "custom",
    "matrices": [[[0.5]], [[2.0]]],
    "waiting": [[1, 3], [1, 3]],
    "x0": [2.0],
    "tau_days": 1,
    "horizon_steps": 4,
    "cost": {"stage": [1, 1], "terminal": 1, "consecutive": [0, 0]},
    "target": {"H": [[1], [-1]], "h": [1, 1]}
  })");
  const Scenario s = scenario_from_json(doc);
  EXPECT_EQ(s.kind, ScenarioKind::kCustom);
  EXPECT_EQ(s.prediction_horizon, 1);
  EXPECT_TRUE(s.enforce_terminal);
  EXPECT_FALSE(s.system.state_set().is_bounded());
  EXPECT_EQ(solve_ocp(s.problem()).path, SwitchingPath{0});
}

TEST(ScenarioIoTest, SchemaErrors) {
  json doc = scenario_to_json(viral_scenario(1));
  doc.erase("x0");
  EXPECT_THROW(scenario_from_json(doc), std::invalid_argument);
  doc = scenario_to_json(viral_scenario(1));
  doc["x0"] = {1.0, 2.0};
  EXPECT_THROW(scenario_from_json(doc), std::exception);
  doc = scenario_to_json(viral_scenario(1));
  doc["kind"] = "plant";
  EXPECT_THROW(scenario_from_json(doc), std::invalid_argument);
  doc = scenario_to_json(viral_scenario(1));
  doc["cost"]["stage"] = {1.0};
  EXPECT_THROW(scenario_from_json(doc), std::invalid_argument);
  doc = scenario_to_json(viral_scenario(1));
  doc["matrices"][0] = "nope";
  EXPECT_THROW(scenario_from_json(doc), std::invalid_argument);
  EXPECT_THROW(load_scenario_file("/nonexistent/scenario.json"), std::runtime_error);
}

}  // namespace
}  // namespace swmpc
