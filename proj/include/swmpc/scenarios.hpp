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

#ifndef SWMPC_SCENARIOS_HPP
#define SWMPC_SCENARIOS_HPP

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swmpc/controller.hpp"
#include "swmpc/polytope.hpp"
#include "swmpc/switched_system.hpp"

namespace swmpc {

/// exp(Z) by Pade scaling and squaring.
Eigen::MatrixXd expm(const Eigen::MatrixXd& Z);

/// Coordinate sum of a state (total viral load, total live cells).
double total_load(const Eigen::VectorXd& x);

/// Four-genotype viral mutation model under two therapies.
struct ViralParameters {
  int id = 1;
  double mu = 1e-4;     // mutation rate
  double delta = 0.24;  // clearance rate, 1/day
  double tau = 28.0;    // days between decisions
  double duration = 336.0;
  double detect_limit = 50.0;
  double failure_limit = 1000.0;
  Eigen::Matrix4d M;                    // mutation connections
  std::vector<Eigen::Vector4d> rates;   // replication rate diagonal per therapy, 1/day
  Eigen::Vector4d x0;

  int steps() const { return static_cast<int>(std::lround(duration / tau)); }
};

/// Parameters of scenario 1 (chronic) or 2 (acute).
ViralParameters viral_parameters(int id);
/// A_sigma = exp((R_sigma - delta I + mu M) tau) on the nonnegative orthant.
SwitchedSystem build_viral_system(const ViralParameters& params);

struct CancerParameters {
  std::vector<std::string> drugs{"P", "B", "T"};
  std::vector<Eigen::MatrixXd> matrices;
  std::vector<WaitingBounds> waiting;
  Eigen::Vector2d x0{220.0, 612.0};
  double tau_hours = 12.0;
  int steps = 72;
};

CancerParameters cancer_parameters();
SwitchedSystem build_cancer_system(const CancerParameters& params = cancer_parameters());

enum class ScenarioKind { kViral, kCancer, kCustom };

const char* to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& s);

/// A fully parameterized benchmark: system, initial state, controller setup.
struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::kCustom;
  SwitchedSystem system;
  Eigen::VectorXd x0;
  double tau_days = 1.0;
  int horizon_steps = 1;
  int prediction_horizon = 1;
  PolytopeUnion target;
  CostSpec cost;
  bool enforce_waiting = true;
  bool enforce_terminal = true;
  bool enforce_cycle = false;
  std::vector<std::string> labels;  // signal names, 1-based by position

  /// Controller template with x = x0 and empty memory.
  OcpProblem problem() const;
  /// Time of decision instant k in the reporting unit (days, or hours for cancer).
  double time_at(int k) const;
  const char* time_unit() const;
};

/// Viral scenario 1 or 2 with the SwMPC setup (N = 5, target {0}).
Scenario viral_scenario(int id);
/// Cancer drug scheduling with waiting bounds and the cycle rule (N = 8).
Scenario cancer_scenario();
/// Cancer consecutive-use weight cases 1, 2, 3 (upper waiting bounds lifted).
Scenario cancer_case(int id);
/// Four non-Schur planar subsystems driven to the origin (N = 15, T = 30).
Scenario illustrative_scenario();

/// Names accepted by builtin_scenario().
std::vector<std::string> builtin_scenario_names();
Scenario builtin_scenario(const std::string& name);

}  // namespace swmpc

#endif  // SWMPC_SCENARIOS_HPP
