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

#ifndef SWMPC_PROJECTION_HPP
#define SWMPC_PROJECTION_HPP

#include <Eigen/Dense>

#include "swmpc/polytope.hpp"

namespace swmpc {

/// Euclidean projection of x onto {y : H y <= h}.
///
/// Dual active-set method (Goldfarb-Idnani) specialized to the identity
/// Hessian: starts from the unconstrained minimizer y = x and adds the most
/// violated constraint until primal feasibility, dropping constraints whose
/// multipliers would turn negative. Boxes are handled by coordinate clamping.
/// Throws std::invalid_argument when the polytope is empty.
Eigen::VectorXd project(const Polytope& set, const Eigen::VectorXd& x);

/// ||x - project(set, x)||_2, or 0 when x is a member.
double distance(const Polytope& set, const Eigen::VectorXd& x);

}  // namespace swmpc

#endif  // SWMPC_PROJECTION_HPP
