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

#include "swmpc/scenarios.hpp"

#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace swmpc {

namespace {

Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d R;
  R << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return R;
}

Scenario make_scenario(std::string name, ScenarioKind kind, SwitchedSystem sys,
                       Eigen::VectorXd x0, PolytopeUnion target) {
  const int q = sys.q();
  return Scenario{std::move(name), kind,     std::move(sys), std::move(x0), 1.0, 1, 1,
                  std::move(target), CostSpec::uniform(q), true, true, false, {}};
}

}  // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& Z) {
  if (Z.rows() != Z.cols()) throw std::invalid_argument("matrix exponential needs a square matrix");
  return Z.exp();
}

double total_load(const Eigen::VectorXd& x) { return x.sum(); }

ViralParameters viral_parameters(int id) {
  ViralParameters p;
  p.id = id;
  // V1 <-> V2, V2 <-> V4, V4 <-> V3, V3 <-> V1
  p.M << 0, 1, 1, 0,
         1, 0, 0, 1,
         1, 0, 0, 1,
         0, 1, 1, 0;
  if (id == 1) {
    p.rates = {Eigen::Vector4d(0.05, 0.28, 0.01, 0.27), Eigen::Vector4d(0.05, 0.20, 0.25, 0.27)};
  } else if (id == 2) {
    p.rates = {Eigen::Vector4d(0.05, 0.40, 0.05, 0.23), Eigen::Vector4d(0.05, 0.05, 0.40, 0.23)};
  } else {
    throw std::invalid_argument("viral scenario id must be 1 or 2, got " + std::to_string(id));
  }
  const double v1 = 1000.0;
  p.x0 << v1, p.mu * v1, p.mu * v1, 2.0 * p.mu * p.mu * v1;
  return p;
}

SwitchedSystem build_viral_system(const ViralParameters& p) {
  std::vector<Eigen::MatrixXd> A;
  for (const auto& r : p.rates) {
    const Eigen::Matrix4d generator =
        Eigen::Matrix4d(r.asDiagonal()) - p.delta * Eigen::Matrix4d::Identity() + p.mu * p.M;
    A.push_back(expm(generator * p.tau));
  }
  return SwitchedSystem(std::move(A), Polytope::nonnegative_orthant(4), p.steps());
}

CancerParameters cancer_parameters() {
  CancerParameters p;
  Eigen::MatrixXd AP(2, 2), AB(2, 2), AT(2, 2);
  AP << 0.755, 0.081, 0.169, 0.843;
  AB << 0.896, 0.0, 0.186, 1.083;
  AT << 1.030, 0.231, 0.022, 0.821;
  p.matrices = {AP, AB, AT};
  p.waiting = {{2, 4}, {2, 8}, {2, 6}};
  return p;
}

SwitchedSystem build_cancer_system(const CancerParameters& params) {
  return SwitchedSystem(params.matrices, Polytope::nonnegative_orthant(2), params.waiting);
}

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kViral: return "viral";
    case ScenarioKind::kCancer: return "cancer";
    case ScenarioKind::kCustom: return "custom";
  }
  return "custom";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
  if (s == "viral") return ScenarioKind::kViral;
  if (s == "cancer") return ScenarioKind::kCancer;
  if (s == "custom") return ScenarioKind::kCustom;
  throw std::invalid_argument("unknown scenario kind '" + s + "'");
}

OcpProblem Scenario::problem() const {
  OcpProblem p{system, x0, prediction_horizon, target, cost, {}, enforce_waiting, enforce_terminal,
               enforce_cycle};
  return p;
}

double Scenario::time_at(int k) const {
  return kind == ScenarioKind::kCancer ? k * tau_days * 24.0 : k * tau_days;
}

const char* Scenario::time_unit() const {
  return kind == ScenarioKind::kCancer ? "hours" : "days";
}

Scenario viral_scenario(int id) {
  const ViralParameters p = viral_parameters(id);
  Scenario s = make_scenario("viral-" + std::to_string(id), ScenarioKind::kViral,
                             build_viral_system(p), p.x0, Polytope::origin(4));
  s.tau_days = p.tau;
  s.horizon_steps = p.steps();
  s.prediction_horizon = 5;
  s.enforce_terminal = false;
  s.labels = {"therapy-1", "therapy-2"};
  return s;
}

Scenario cancer_scenario() {
  const CancerParameters p = cancer_parameters();
  Scenario s = make_scenario("cancer", ScenarioKind::kCancer, build_cancer_system(p), p.x0,
                             Polytope::capped_orthant(2, 50.0));
  s.tau_days = p.tau_hours / 24.0;
  s.horizon_steps = p.steps;
  s.prediction_horizon = 8;
  s.enforce_terminal = false;
  s.enforce_cycle = true;
  s.labels = p.drugs;
  return s;
}

Scenario cancer_case(int id) {
  std::vector<double> b;
  switch (id) {
    case 1: b = {1.0, 1.0, 1.0}; break;
    case 2: b = {2.0, 1.0, 1.0}; break;
    case 3: b = {20.0, 1.0, 2.0}; break;  // order P, B, T
    default: throw std::invalid_argument("cancer case must be 1, 2 or 3, got " + std::to_string(id));
  }
  CancerParameters p = cancer_parameters();
  for (auto& w : p.waiting) w.upper = p.steps;
  Scenario s = make_scenario("cancer-case-" + std::to_string(id), ScenarioKind::kCancer,
                             build_cancer_system(p), p.x0, Polytope::origin(2));
  s.tau_days = p.tau_hours / 24.0;
  s.horizon_steps = p.steps;
  s.prediction_horizon = 6;
  s.enforce_terminal = false;
  s.cost.consecutive = std::move(b);
  s.labels = p.drugs;
  return s;
}

Scenario illustrative_scenario() {
  using std::numbers::pi;
  Eigen::MatrixXd A1(2, 2), A4(2, 2);
  A1 << 1.5, 0.0, 0.0, -0.8;
  A4 << -1.2, 0.0, 1.0, 1.3;
  const Eigen::MatrixXd A2 = 1.1 * rotation(2.0 * pi / 5.0);
  const Eigen::MatrixXd A3 = 1.05 * rotation(2.0 * pi / 5.0 - 1.0);
  const int steps = 30;
  SwitchedSystem sys({A1, A2, A3, A4}, Polytope::box(2, 10.0), steps);
  Scenario s = make_scenario("illustrative", ScenarioKind::kCustom, std::move(sys),
                             Eigen::Vector2d(-0.5, 0.5), Polytope::origin(2));
  s.horizon_steps = steps;
  s.prediction_horizon = 15;
  s.enforce_waiting = false;
  s.enforce_terminal = false;
  s.labels = {"A1", "A2", "A3", "A4"};
  return s;
}

std::vector<std::string> builtin_scenario_names() {
  return {"viral-1", "viral-2", "cancer", "cancer-case-1", "cancer-case-2", "cancer-case-3",
          "illustrative"};
}

Scenario builtin_scenario(const std::string& name) {
  if (name == "viral-1") return viral_scenario(1);
  if (name == "viral-2") return viral_scenario(2);
  if (name == "cancer") return cancer_scenario();
  if (name == "cancer-case-1") return cancer_case(1);
  if (name == "cancer-case-2") return cancer_case(2);
  if (name == "cancer-case-3") return cancer_case(3);
  if (name == "illustrative") return illustrative_scenario();
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

}  // namespace swmpc
