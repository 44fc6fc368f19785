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

#ifndef SWMPC_SET_GEOMETRY_HPP
#define SWMPC_SET_GEOMETRY_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "swmpc/polytope.hpp"
#include "swmpc/switched_system.hpp"

namespace swmpc {

struct GeometryOptions {
  /// Maximum number of parts any intermediate union may hold.
  std::size_t part_cap = 100000;
  /// Measure-zero threshold for region-difference pieces (Chebyshev radius).
  double eps = kEmptyRadius;
  /// Inflation used for strict (interior) containment: (1 + margin) * Omega.
  double interior_margin = 1e-6;

  /// Defaults, with `part_cap` taken from SWMPC_PART_CAP when set.
  static GeometryOptions from_env();
};

struct InvarianceReport {
  bool is_sis = false;
  /// For each part of Omega, the signals whose preimage meets it in a
  /// full-dimensional set (or maps it into Omega, for point parts).
  std::vector<std::vector<Signal>> witness_signals;
  std::optional<int> certificate_depth;
};

/// {x : (H A) x <= h}. `subsystem` only labels the error when A is singular.
Polytope preimage(const Eigen::MatrixXd& A, const Polytope& P, int subsystem = 0);

/// Throws SingularMatrixError naming the first singular subsystem.
void require_nonsingular(const SwitchedSystem& sys);

/// S(target) = union over signals i and parts P of A_i^{-1} P, signal-major
/// order, rows normalized, redundant rows and infeasible parts removed.
PolytopeUnion controllable_set(const SwitchedSystem& sys, const PolytopeUnion& target,
                               const GeometryOptions& opts = {});
/// Serial reference for controllable_set; identical output.
PolytopeUnion controllable_set_serial(const SwitchedSystem& sys, const PolytopeUnion& target,
                                      const GeometryOptions& opts = {});

/// i-fold application of controllable_set.
PolytopeUnion i_step_controllable(const SwitchedSystem& sys, const PolytopeUnion& target, int i,
                                  const GeometryOptions& opts = {});

/// Decides P subset of U (up to measure-zero slivers of radius eps) by
/// recursive region difference.
bool inclusion_in_union(const Polytope& P, const PolytopeUnion& U, double eps = kEmptyRadius,
                        std::size_t part_cap = 100000);

InvarianceReport is_switched_invariant(const SwitchedSystem& sys, const PolytopeUnion& omega,
                                       const GeometryOptions& opts = {});

/// Smallest k <= kmax with Omega in int(S_1 u ... u S_{k+1}); nullopt if none.
std::optional<int> stabilizability_certificate(const SwitchedSystem& sys,
                                               const PolytopeUnion& omega, int kmax,
                                               const GeometryOptions& opts = {});

/// Smallest k <= kmax with S_{k+1} inside Omega u S_1 u ... u S_k; nullopt if none.
std::optional<int> non_stabilizability_certificate(const SwitchedSystem& sys,
                                                   const PolytopeUnion& omega, int kmax,
                                                   const GeometryOptions& opts = {});

/// Euclidean distance from x to the union (minimum over parts).
double distance_to_set(const PolytopeUnion& omega, const Eigen::VectorXd& x);

}  // namespace swmpc

#endif  // SWMPC_SET_GEOMETRY_HPP
