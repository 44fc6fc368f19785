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

#ifndef SWMPC_LINPROG_HPP
#define SWMPC_LINPROG_HPP

#include <Eigen/Dense>

namespace swmpc::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  double value = 0.0;
  Eigen::VectorXd x;

  bool optimal() const { return status == Status::kOptimal; }
};

/// Maximizes c'x subject to A x <= b with x free.
///
/// Dense two-phase tableau simplex. Intended for the small problems that
/// arise in polytope computations (a handful of variables, tens to a few
/// hundred rows). Entering variables follow Dantzig's rule with a switch to
/// Bland's rule after a pivot budget, so degenerate problems terminate.
Result maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                const Eigen::VectorXd& c);

}  // namespace swmpc::lp

#endif  // SWMPC_LINPROG_HPP
