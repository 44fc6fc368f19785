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

#ifndef SWMPC_STRATEGIES_HPP
#define SWMPC_STRATEGIES_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "swmpc/switched_system.hpp"

namespace swmpc {

/// Open-loop schedule over a whole treatment horizon and its outcome.
struct StrategyResult {
  SwitchingPath path;
  std::vector<Eigen::VectorXd> states;  // path.size() + 1 entries
  double index = 0.0;                   // sum over k = 0..T of total_load(x(k))
  std::vector<double> totals;           // total_load(x(k)) per decision instant
};

/// Sum of the coordinate sums of all states (cumulative total load).
double performance_index(const std::vector<Eigen::VectorXd>& states);

/// Simulates `path` from x0 and fills every StrategyResult field.
StrategyResult evaluate_strategy(const SwitchedSystem& sys, const Eigen::VectorXd& x0,
                                 SwitchingPath path);

/// Linear cost sum_{k<T} w_{sigma(k)}' x(k) + w_T' x(T).
struct LinearObjective {
  std::vector<Eigen::VectorXd> stage;  // one weight vector per signal
  Eigen::VectorXd terminal;

  /// All-ones weights: the objective equals the performance index.
  static LinearObjective total_load(int n, int q);
  double operator()(const std::vector<Eigen::VectorXd>& states, const SwitchingPath& path) const;
};

inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 20;

/// Minimizer of `objective` over all q^T sequences, lexicographically smallest
/// on ties. Enumeration is split over prefixes and run in parallel.
/// Throws ResourceError when q^T exceeds `cap`.
StrategyResult brute_force_optimal(const SwitchedSystem& sys, const Eigen::VectorXd& x0, int steps,
                                   const LinearObjective& objective,
                                   std::uint64_t cap = kEnumerationCap);
/// Performance-index objective.
StrategyResult brute_force_optimal(const SwitchedSystem& sys, const Eigen::VectorXd& x0, int steps,
                                   std::uint64_t cap = kEnumerationCap);
/// Single-threaded reference enumeration in lexicographic order.
StrategyResult brute_force_optimal_serial(const SwitchedSystem& sys, const Eigen::VectorXd& x0,
                                          int steps, const LinearObjective& objective,
                                          std::uint64_t cap = kEnumerationCap);

/// Start on signal 0; at each decision instant k >= 1 where the total load
/// strictly exceeds `threshold`, switch to the other regimen.
StrategyResult virologic_failure_strategy(const SwitchedSystem& sys, const Eigen::VectorXd& x0,
                                          int steps, double threshold = 1000.0);

/// Alternate between signals 0 and 1 every `period` decision intervals.
StrategyResult swatch_strategy(const SwitchedSystem& sys, const Eigen::VectorXd& x0, int steps,
                               int period = 3);

/// Blocks (signal, repeat count) applied in order and repeated indefinitely.
struct CyclicSchedule {
  std::vector<std::pair<Signal, int>> blocks;

  void validate(int q) const;
  /// The first `steps` signals of the infinite repetition.
  SwitchingPath unroll(int steps) const;
  /// First block whose count lies outside [L, U] of its signal.
  WaitingReport audit(const SwitchedSystem& sys) const;
};

StrategyResult run_cycle(const SwitchedSystem& sys, const Eigen::VectorXd& x0,
                         const CyclicSchedule& schedule, int steps);

}  // namespace swmpc

#endif  // SWMPC_STRATEGIES_HPP
