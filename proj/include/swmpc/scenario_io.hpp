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

#ifndef SWMPC_SCENARIO_IO_HPP
#define SWMPC_SCENARIO_IO_HPP

#include <string>

#include <json.hpp>

#include "swmpc/polytope.hpp"
#include "swmpc/scenarios.hpp"

namespace swmpc {

/// {"H": [[...], ...], "h": [...]}
nlohmann::json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const nlohmann::json& j);

/// {"parts": [polytope, ...]}
nlohmann::json union_to_json(const PolytopeUnion& u);
/// Accepts either a single polytope object or {"parts": [...]}.
PolytopeUnion union_from_json(const nlohmann::json& j);

/// Scenario document:
///   {"kind", "name", "matrices", "waiting": [[L, U], ...], "x0", "tau_days",
///    "horizon_steps", "prediction_horizon", "cost": {"stage", "terminal",
///    "consecutive"}, "target", "state_set", "enforce_waiting",
///    "enforce_terminal", "enforce_cycle", "labels"}
/// Keys after "cost" are optional when reading.
nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

/// Reads a scenario document from a file. Throws std::runtime_error on I/O or
/// parse failure and std::invalid_argument on schema errors.
Scenario load_scenario_file(const std::string& path);

}  // namespace swmpc

#endif  // SWMPC_SCENARIO_IO_HPP
