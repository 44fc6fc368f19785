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

#ifndef SWMPC_CONTROLLER_HPP
#define SWMPC_CONTROLLER_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "swmpc/errors.hpp"
#include "swmpc/polytope.hpp"
#include "swmpc/switched_system.hpp"

namespace swmpc {

/// Weights of the set-distance cost
///   J = sum_j c_{sigma(j)} d(x(j)) + c d(x(N)) + sum_j b_{sigma(j)} |pack(j)|^2.
struct CostSpec {
  std::vector<double> stage;        // c_sigma > 0
  double terminal = 1.0;            // c > 0
  std::vector<double> consecutive;  // b_sigma >= 0; empty means all zero
  /// Count memory signals in the pack lengths of the consecutive-use term.
  bool consecutive_includes_memory = true;

  static CostSpec uniform(int q, double stage = 1.0, double terminal = 1.0);
  void validate(int q) const;
  double consecutive_weight(Signal s) const { return consecutive.empty() ? 0.0 : consecutive[s]; }
};

/// One horizon-N instance of the switching optimal control problem.
struct OcpProblem {
  SwitchedSystem system;
  Eigen::VectorXd x;
  int horizon = 1;
  PolytopeUnion target;
  CostSpec cost;
  /// The last applied signals, oldest first; at most system.max_upper() long.
  SwitchingPath memory;
  bool enforce_waiting = true;
  bool enforce_terminal = true;
  /// Every q consecutive packs of memory ++ prediction use all q signals,
  /// i.e. the schedule repeats cycles in which each signal appears once.
  bool enforce_cycle = false;

  void validate() const;
};

struct SearchStats {
  long long nodes_explored = 0;
  long long nodes_pruned = 0;
  long long leaves = 0;
};

struct OcpSolution {
  SwitchingPath path;
  std::vector<Eigen::VectorXd> trajectory;
  double cost = 0.0;
  SearchStats stats;
};

struct CostEvaluation {
  double cost = 0.0;
  std::vector<Eigen::VectorXd> trajectory;
};

/// Consecutive-use term sum_j b_{sigma(j)} |pack(j)|^2 over the prediction
/// positions of `path`, with packs taken on memory ++ path when
/// `consecutive_includes_memory` is set.
double consecutive_cost(const CostSpec& cost, const SwitchingPath& memory,
                        const SwitchingPath& path);

/// Rolls the dynamics from problem.x under `path` (length N) and evaluates the
/// cost. Constraints are not checked.
CostEvaluation eval_cost(const OcpProblem& problem, const SwitchingPath& path);

/// Which constraint `path` violates, if any. Direct (non-incremental) check
/// used for auditing solutions.
std::optional<InfeasibilityKind> check_admissible(const OcpProblem& problem,
                                                  const SwitchingPath& path);

/// Exact minimizer over all admissible sequences of length N, ties broken by
/// the lexicographically smallest path. Depth-first branch and bound; the
/// subtrees below a fixed prefix depth are searched in parallel with a shared
/// incumbent, and the result does not depend on the thread count.
/// Throws InfeasibleError when no sequence is admissible.
OcpSolution solve_ocp(const OcpProblem& problem);

/// Single-threaded reference: plain lexicographic depth-first branch and bound.
OcpSolution solve_ocp_serial(const OcpProblem& problem);

struct ControllerState {
  Eigen::VectorXd x;
  SwitchingPath memory;
  int k = 0;
};

struct RhcStep {
  Signal applied = 0;
  ControllerState next;
  OcpSolution solution;
};

/// Solves the problem at `state` (template supplies everything else), applies
/// the first signal and shifts the memory window.
RhcStep rhc_step(const ControllerState& state, const OcpProblem& problem_template);

struct ClosedLoopRecord {
  std::vector<Eigen::VectorXd> states;  // steps + 1 entries
  SwitchingPath signals;
  std::vector<double> costs;  // optimal cost at each solved step
  std::vector<SearchStats> stats;
};

/// Iterates rhc_step `steps` times from x0 with empty memory. Infeasibility
/// is rethrown with the failing step index.
ClosedLoopRecord run_closed_loop(const OcpProblem& problem_template, const Eigen::VectorXd& x0,
                                 int steps);

}  // namespace swmpc

#endif  // SWMPC_CONTROLLER_HPP
