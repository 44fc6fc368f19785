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

#include <fstream>
#include <stdexcept>

#include "swmpc/errors.hpp"

namespace swmpc {

namespace {

using nlohmann::json;

Eigen::VectorXd vector_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw std::invalid_argument(std::string(what) + " must be a nonempty array of rows");
  const auto rows = j.size(), cols = j[0].size();
  Eigen::MatrixXd M(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw std::invalid_argument(std::string(what) + " has ragged rows");
    for (std::size_t c = 0; c < cols; ++c) M(r, c) = j[r][c].get<double>();
  }
  return M;
}

json vector_to_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json matrix_to_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) rows.push_back(vector_to_json(M.row(r).transpose()));
  return rows;
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("scenario is missing '") + key + "'");
  return j.at(key);
}

}  // namespace

json polytope_to_json(const Polytope& p) {
  return json{{"H", matrix_to_json(p.H())}, {"h", vector_to_json(p.h())}};
}

Polytope polytope_from_json(const json& j) {
  return Polytope(matrix_from_json(require(j, "H"), "H"), vector_from_json(require(j, "h"), "h"));
}

json union_to_json(const PolytopeUnion& u) {
  json parts = json::array();
  for (const auto& p : u.parts) parts.push_back(polytope_to_json(p));
  return json{{"parts", parts}};
}

PolytopeUnion union_from_json(const json& j) {
  if (!j.contains("parts")) return PolytopeUnion(polytope_from_json(j));
  std::vector<Polytope> parts;
  for (const auto& p : j.at("parts")) parts.push_back(polytope_from_json(p));
  return PolytopeUnion(std::move(parts));
}

json scenario_to_json(const Scenario& s) {
  json mats = json::array();
  for (const auto& A : s.system.matrices()) mats.push_back(matrix_to_json(A));
  json waiting = json::array();
  for (const auto& w : s.system.waiting()) waiting.push_back({w.lower, w.upper});
  json cost{{"stage", s.cost.stage},
            {"terminal", s.cost.terminal},
            {"consecutive", s.cost.consecutive.empty()
                                ? std::vector<double>(s.system.q(), 0.0)
                                : s.cost.consecutive},
            {"consecutive_includes_memory", s.cost.consecutive_includes_memory}};
  return json{{"kind", to_string(s.kind)},
              {"name", s.name},
              {"matrices", mats},
              {"waiting", waiting},
              {"x0", vector_to_json(s.x0)},
              {"tau_days", s.tau_days},
              {"horizon_steps", s.horizon_steps},
              {"prediction_horizon", s.prediction_horizon},
              {"cost", cost},
              {"target", s.target.size() == 1 ? polytope_to_json(s.target.parts.front())
                                              : union_to_json(s.target)},
              {"state_set", polytope_to_json(s.system.state_set())},
              {"enforce_waiting", s.enforce_waiting},
              {"enforce_terminal", s.enforce_terminal},
              {"enforce_cycle", s.enforce_cycle},
              {"labels", s.labels}};
}

Scenario scenario_from_json(const json& j) {
  try {
    std::vector<Eigen::MatrixXd> mats;
    for (const auto& m : require(j, "matrices")) mats.push_back(matrix_from_json(m, "matrix"));
    if (mats.empty()) throw std::invalid_argument("scenario has no matrices");
    const auto n = mats.front().rows();

    std::vector<WaitingBounds> waiting;
    for (const auto& w : require(j, "waiting")) {
      if (!w.is_array() || w.size() != 2)
        throw std::invalid_argument("waiting entries must be [L, U] pairs");
      waiting.push_back({w[0].get<int>(), w[1].get<int>()});
    }
    const Polytope state_set = j.contains("state_set")
                                   ? polytope_from_json(j.at("state_set"))
                                   : Polytope::whole_space(static_cast<int>(n));
    SwitchedSystem sys(std::move(mats), state_set, std::move(waiting));

    const json& c = require(j, "cost");
    CostSpec cost;
    cost.stage = require(c, "stage").get<std::vector<double>>();
    cost.terminal = require(c, "terminal").get<double>();
    if (c.contains("consecutive")) cost.consecutive = c.at("consecutive").get<std::vector<double>>();
    cost.consecutive_includes_memory = c.value("consecutive_includes_memory", true);
    cost.validate(sys.q());

    const int q = sys.q();
    Scenario s{j.value("name", std::string("custom")),
               scenario_kind_from_string(require(j, "kind").get<std::string>()),
               std::move(sys),
               vector_from_json(require(j, "x0"), "x0"),
               require(j, "tau_days").get<double>(),
               require(j, "horizon_steps").get<int>(),
               j.value("prediction_horizon", 1),
               union_from_json(require(j, "target")),
               std::move(cost),
               j.value("enforce_waiting", true),
               j.value("enforce_terminal", true),
               j.value("enforce_cycle", false),
               j.value("labels", std::vector<std::string>{})};
    s.system.check_state(s.x0);
    if (s.tau_days <= 0.0) throw std::invalid_argument("tau_days must be positive");
    if (s.horizon_steps < 0) throw std::invalid_argument("horizon_steps must be nonnegative");
    if (s.prediction_horizon < 1) throw std::invalid_argument("prediction_horizon must be positive");
    if (!s.labels.empty() && static_cast<int>(s.labels.size()) != q)
      throw std::invalid_argument("need one label per subsystem");
    for (const auto& part : s.target.parts)
      if (part.dim() != s.system.n()) throw DimensionError("target dimension does not match");
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed scenario: ") + e.what());
  }
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("scenario file '" + path + "' is not valid JSON: " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace swmpc
