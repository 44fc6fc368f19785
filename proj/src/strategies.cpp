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

#include "swmpc/strategies.hpp"

#include <omp.h>

#include <cmath>
#include <limits>
#include <string>

#include "swmpc/errors.hpp"
#include "swmpc/scenarios.hpp"

namespace swmpc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_steps(int steps) {
  if (steps < 0) throw std::invalid_argument("number of steps must be nonnegative");
}

std::uint64_t checked_count(int q, int steps, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (int k = 0; k < steps; ++k) {
    count *= static_cast<std::uint64_t>(q);
    if (count > cap)
      throw ResourceError("enumerating " + std::to_string(q) + "^" + std::to_string(steps) +
                          " sequences exceeds the cap of " + std::to_string(cap));
  }
  return count;
}

void check_objective(const SwitchedSystem& sys, const LinearObjective& obj) {
  if (static_cast<int>(obj.stage.size()) != sys.q())
    throw std::invalid_argument("need one stage weight vector per subsystem");
  for (const auto& w : obj.stage)
    if (w.size() != sys.n()) throw DimensionError("stage weight vector has the wrong dimension");
  if (obj.terminal.size() != sys.n()) throw DimensionError("terminal weight has the wrong dimension");
}

struct Incumbent {
  double value = kInf;
  SwitchingPath path;

  void offer(double v, const SwitchingPath& p) {
    if (v < value || (v == value && (path.empty() || p < path))) {
      value = v;
      path = p;
    }
  }
};

// Lexicographic enumeration below a fixed prefix with incremental states.
class Enumerator {
 public:
  Enumerator(const SwitchedSystem& sys, const LinearObjective& obj, int steps)
      : sys_(sys), obj_(obj), steps_(steps) {}

  void run(const Eigen::VectorXd& x, double acc, SwitchingPath& path) {
    const int k = static_cast<int>(path.size());
    if (k == steps_) {
      best.offer(acc + obj_.terminal.dot(x), path);
      return;
    }
    for (Signal s = 0; s < sys_.q(); ++s) {
      const double next = acc + obj_.stage[s].dot(x);
      path.push_back(s);
      run(sys_.matrices()[s] * x, next, path);
      path.pop_back();
    }
  }

  Incumbent best;

 private:
  const SwitchedSystem& sys_;
  const LinearObjective& obj_;
  int steps_;
};

}  // namespace

double performance_index(const std::vector<Eigen::VectorXd>& states) {
  if (states.empty()) throw std::invalid_argument("performance index of an empty trajectory");
  double total = 0.0;
  for (const auto& x : states) total += total_load(x);
  return total;
}

StrategyResult evaluate_strategy(const SwitchedSystem& sys, const Eigen::VectorXd& x0,
                                 SwitchingPath path) {
  StrategyResult r;
  r.states = simulate(sys, x0, path).states;
  r.path = std::move(path);
  r.totals.reserve(r.states.size());
  for (const auto& x : r.states) r.totals.push_back(total_load(x));
  r.index = performance_index(r.states);
  return r;
}

LinearObjective LinearObjective::total_load(int n, int q) {
  LinearObjective obj;
  obj.stage.assign(q, Eigen::VectorXd::Ones(n));
  obj.terminal = Eigen::VectorXd::Ones(n);
  return obj;
}

double LinearObjective::operator()(const std::vector<Eigen::VectorXd>& states,
                                   const SwitchingPath& path) const {
  if (states.size() != path.size() + 1)
    throw std::invalid_argument("trajectory length does not match the path");
  double acc = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) acc = acc + stage[path[k]].dot(states[k]);
  return acc + terminal.dot(states.back());
}

StrategyResult brute_force_optimal(const SwitchedSystem& sys, const Eigen::VectorXd& x0, int steps,
                                   const LinearObjective& objective, std::uint64_t cap) {
  check_steps(steps);
  sys.check_state(x0);
  check_objective(sys, objective);
  checked_count(sys.q(), steps, cap);

  // Prefixes of length `depth`, numbered in lexicographic order.
  const int threads = omp_get_max_threads();
  int depth = 0;
  long tasks = 1;
  while (depth < steps && tasks * sys.q() <= 16L * threads) {
    tasks *= sys.q();
    ++depth;
  }

  std::vector<Incumbent> bests(tasks);
#pragma omp parallel for schedule(dynamic, 1)
  for (long t = 0; t < tasks; ++t) {
    SwitchingPath prefix(depth);
    long code = t;
    for (int i = depth - 1; i >= 0; --i) {
      prefix[i] = static_cast<Signal>(code % sys.q());
      code /= sys.q();
    }
    Eigen::VectorXd x = x0;
    double acc = 0.0;
    for (const Signal s : prefix) {
      acc = acc + objective.stage[s].dot(x);
      x = sys.matrices()[s] * x;
    }
    Enumerator e(sys, objective, steps);
    e.run(x, acc, prefix);
    bests[t] = std::move(e.best);
  }

  Incumbent best;
  for (const auto& b : bests) best.offer(b.value, b.path);
  return evaluate_strategy(sys, x0, std::move(best.path));
}

StrategyResult brute_force_optimal(const SwitchedSystem& sys, const Eigen::VectorXd& x0, int steps,
                                   std::uint64_t cap) {
  return brute_force_optimal(sys, x0, steps, LinearObjective::total_load(sys.n(), sys.q()), cap);
}

StrategyResult brute_force_optimal_serial(const SwitchedSystem& sys, const Eigen::VectorXd& x0,
                                          int steps, const LinearObjective& objective,
                                          std::uint64_t cap) {
  check_steps(steps);
  sys.check_state(x0);
  check_objective(sys, objective);
  const std::uint64_t count = checked_count(sys.q(), steps, cap);

  Incumbent best;
  SwitchingPath path(steps);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (int i = steps - 1; i >= 0; --i) {
      path[i] = static_cast<Signal>(c % sys.q());
      c /= sys.q();
    }
    const double v = objective(simulate(sys, x0, path).states, path);
    if (v < best.value) {
      best.value = v;
      best.path = path;
    }
  }
  return evaluate_strategy(sys, x0, std::move(best.path));
}

StrategyResult virologic_failure_strategy(const SwitchedSystem& sys, const Eigen::VectorXd& x0,
                                          int steps, double threshold) {
  check_steps(steps);
  if (sys.q() != 2) throw std::invalid_argument("virologic-failure switching needs two regimens");
  SwitchingPath path;
  Eigen::VectorXd x = x0;
  Signal current = 0;
  for (int k = 0; k < steps; ++k) {
    if (k >= 1 && total_load(x) > threshold) current = 1 - current;
    path.push_back(current);
    x = step(sys, x, current);
  }
  return evaluate_strategy(sys, x0, std::move(path));
}

StrategyResult swatch_strategy(const SwitchedSystem& sys, const Eigen::VectorXd& x0, int steps,
                               int period) {
  check_steps(steps);
  if (sys.q() != 2) throw std::invalid_argument("alternation needs two regimens");
  if (period < 1) throw std::invalid_argument("alternation period must be positive");
  SwitchingPath path(steps);
  for (int k = 0; k < steps; ++k) path[k] = (k / period) % 2;
  return evaluate_strategy(sys, x0, std::move(path));
}

void CyclicSchedule::validate(int q) const {
  if (blocks.empty()) throw std::invalid_argument("cyclic schedule has no blocks");
  for (const auto& [s, h] : blocks) {
    if (s < 0 || s >= q)
      throw SignalRangeError("schedule signal " + std::to_string(s) + " outside [0, " +
                             std::to_string(q) + ")");
    if (h < 1) throw std::invalid_argument("schedule repeat counts must be positive");
  }
}

SwitchingPath CyclicSchedule::unroll(int steps) const {
  check_steps(steps);
  if (blocks.empty()) throw std::invalid_argument("cyclic schedule has no blocks");
  SwitchingPath path;
  path.reserve(steps);
  while (static_cast<int>(path.size()) < steps)
    for (const auto& [s, h] : blocks)
      for (int i = 0; i < h && static_cast<int>(path.size()) < steps; ++i) path.push_back(s);
  return path;
}

WaitingReport CyclicSchedule::audit(const SwitchedSystem& sys) const {
  validate(sys.q());
  int pos = 0;
  for (const auto& [s, h] : blocks) {
    const auto& w = sys.waiting()[s];
    if (h < w.lower) return {false, pos, WaitingViolation::kLower};
    if (h > w.upper) return {false, pos, WaitingViolation::kUpper};
    pos += h;
  }
  return {};
}

StrategyResult run_cycle(const SwitchedSystem& sys, const Eigen::VectorXd& x0,
                         const CyclicSchedule& schedule, int steps) {
  schedule.validate(sys.q());
  return evaluate_strategy(sys, x0, schedule.unroll(steps));
}

}  // namespace swmpc
