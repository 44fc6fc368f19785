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

#ifndef SWMPC_SWITCHED_SYSTEM_HPP
#define SWMPC_SWITCHED_SYSTEM_HPP

#include <vector>

#include <Eigen/Dense>

#include "swmpc/polytope.hpp"

namespace swmpc {

/// Signals are 0-based indices into the subsystem family.
using Signal = int;

/// A finite switching sequence sigma(0), ..., sigma(T-1).
using SwitchingPath = std::vector<Signal>;

/// Minimum and maximum number of consecutive applications of one signal.
struct WaitingBounds {
  int lower = 1;
  int upper = 1;
};

/// Discrete-time switched linear system x(k+1) = A_{sigma(k)} x(k) on a
/// closed state-constraint set, with per-signal waiting (dwell) bounds.
class SwitchedSystem {
 public:
  SwitchedSystem(std::vector<Eigen::MatrixXd> matrices, Polytope state_set,
                 std::vector<WaitingBounds> waiting);
  /// Unconstrained waiting times (L = 1, U = `max_dwell`).
  SwitchedSystem(std::vector<Eigen::MatrixXd> matrices, Polytope state_set, int max_dwell);

  int n() const { return static_cast<int>(matrices_.front().rows()); }
  int q() const { return static_cast<int>(matrices_.size()); }
  const std::vector<Eigen::MatrixXd>& matrices() const { return matrices_; }
  const Eigen::MatrixXd& matrix(Signal sigma) const;
  const Polytope& state_set() const { return state_set_; }
  const std::vector<WaitingBounds>& waiting() const { return waiting_; }
  /// U = max over signals of the upper waiting bound.
  int max_upper() const;

  void check_signal(Signal sigma) const;
  void check_state(const Eigen::VectorXd& x) const;

 private:
  std::vector<Eigen::MatrixXd> matrices_;
  Polytope state_set_;
  std::vector<WaitingBounds> waiting_;
};

/// States x(0..T) of an open-loop run. Points outside the state set are
/// listed in `outside_state_set` but do not stop the simulation.
struct Trajectory {
  std::vector<Eigen::VectorXd> states;
  std::vector<int> outside_state_set;
};

/// Maximal run of equal signals containing a given position.
struct JPack {
  int start = 0;
  int length = 0;
  Signal signal = 0;

  friend bool operator==(const JPack&, const JPack&) = default;
};

enum class WaitingViolation { kNone, kLower, kUpper };

struct WaitingReport {
  bool ok = true;
  int index = -1;  // first index of the offending pack
  WaitingViolation kind = WaitingViolation::kNone;

  explicit operator bool() const { return ok; }
};

Eigen::VectorXd step(const SwitchedSystem& sys, const Eigen::VectorXd& x, Signal sigma);

Trajectory simulate(const SwitchedSystem& sys, const Eigen::VectorXd& x0,
                    const SwitchingPath& path);

JPack j_pack(const SwitchingPath& path, int j);

/// All packs of `path` in order of position.
std::vector<JPack> pack_decomposition(const SwitchingPath& path);

/// Checks L <= |pack| <= U on every pack. With `relax_trailing`, the pack
/// touching the last position is exempt from its lower bound (it may continue
/// past the end of the window).
WaitingReport validate_waiting(const SwitchedSystem& sys, const SwitchingPath& path,
                               bool relax_trailing);

}  // namespace swmpc

#endif  // SWMPC_SWITCHED_SYSTEM_HPP
