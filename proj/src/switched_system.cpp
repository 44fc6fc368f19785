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

#include "swmpc/switched_system.hpp"

#include <algorithm>
#include <string>

#include "swmpc/errors.hpp"

namespace swmpc {

SwitchedSystem::SwitchedSystem(std::vector<Eigen::MatrixXd> matrices, Polytope state_set,
                               std::vector<WaitingBounds> waiting)
    : matrices_(std::move(matrices)),
      state_set_(std::move(state_set)),
      waiting_(std::move(waiting)) {
  if (matrices_.empty()) throw std::invalid_argument("switched system needs at least one subsystem");
  const auto n = matrices_.front().rows();
  if (n < 1) throw DimensionError("state dimension must be positive");
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    const auto& A = matrices_[i];
    if (A.rows() != n || A.cols() != n)
      throw DimensionError("subsystem " + std::to_string(i + 1) + " is " +
                           std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                           ", expected " + std::to_string(n) + "x" + std::to_string(n));
    if (!A.allFinite())
      throw std::invalid_argument("subsystem " + std::to_string(i + 1) + " has non-finite entries");
  }
  if (state_set_.dim() != n) throw DimensionError("state set dimension does not match the system");
  if (waiting_.size() != matrices_.size())
    throw std::invalid_argument("need one waiting-time pair per subsystem");
  for (std::size_t i = 0; i < waiting_.size(); ++i) {
    const auto& w = waiting_[i];
    if (w.lower < 1 || w.lower > w.upper)
      throw std::invalid_argument("waiting bounds of subsystem " + std::to_string(i + 1) +
                                  " must satisfy 1 <= L <= U");
  }
}

SwitchedSystem::SwitchedSystem(std::vector<Eigen::MatrixXd> matrices, Polytope state_set,
                               int max_dwell)
    : SwitchedSystem(matrices, std::move(state_set),
                     std::vector<WaitingBounds>(matrices.size(), WaitingBounds{1, max_dwell})) {}

const Eigen::MatrixXd& SwitchedSystem::matrix(Signal sigma) const {
  check_signal(sigma);
  return matrices_[sigma];
}

int SwitchedSystem::max_upper() const {
  int u = 0;
  for (const auto& w : waiting_) u = std::max(u, w.upper);
  return u;
}

void SwitchedSystem::check_signal(Signal sigma) const {
  if (sigma < 0 || sigma >= q())
    throw SignalRangeError("signal " + std::to_string(sigma) + " outside [0, " +
                           std::to_string(q()) + ")");
}

void SwitchedSystem::check_state(const Eigen::VectorXd& x) const {
  if (x.size() != n())
    throw DimensionError("state has dimension " + std::to_string(x.size()) + ", system has " +
                         std::to_string(n()));
}

Eigen::VectorXd step(const SwitchedSystem& sys, const Eigen::VectorXd& x, Signal sigma) {
  sys.check_state(x);
  return sys.matrix(sigma) * x;
}

Trajectory simulate(const SwitchedSystem& sys, const Eigen::VectorXd& x0,
                    const SwitchingPath& path) {
  sys.check_state(x0);
  for (Signal s : path) sys.check_signal(s);
  Trajectory traj;
  traj.states.reserve(path.size() + 1);
  traj.states.push_back(x0);
  for (Signal s : path) traj.states.push_back(sys.matrices()[s] * traj.states.back());
  for (std::size_t k = 0; k < traj.states.size(); ++k)
    if (!sys.state_set().contains(traj.states[k], 1e-9))
      traj.outside_state_set.push_back(static_cast<int>(k));
  return traj;
}

JPack j_pack(const SwitchingPath& path, int j) {
  const int T = static_cast<int>(path.size());
  if (j < 0 || j >= T)
    throw std::out_of_range("pack index " + std::to_string(j) + " outside path of length " +
                            std::to_string(T));
  int start = j;
  while (start > 0 && path[start - 1] == path[j]) --start;
  int end = j + 1;
  while (end < T && path[end] == path[j]) ++end;
  return {start, end - start, path[j]};
}

std::vector<JPack> pack_decomposition(const SwitchingPath& path) {
  std::vector<JPack> packs;
  const int T = static_cast<int>(path.size());
  for (int j = 0; j < T;) {
    JPack p = j_pack(path, j);
    packs.push_back(p);
    j = p.start + p.length;
  }
  return packs;
}

WaitingReport validate_waiting(const SwitchedSystem& sys, const SwitchingPath& path,
                               bool relax_trailing) {
  const int T = static_cast<int>(path.size());
  for (const JPack& p : pack_decomposition(path)) {
    sys.check_signal(p.signal);
    const WaitingBounds& w = sys.waiting()[p.signal];
    if (p.length > w.upper) return {false, p.start, WaitingViolation::kUpper};
    const bool trailing = p.start + p.length == T;
    if (p.length < w.lower && !(relax_trailing && trailing))
      return {false, p.start, WaitingViolation::kLower};
  }
  return {};
}

}  // namespace swmpc
