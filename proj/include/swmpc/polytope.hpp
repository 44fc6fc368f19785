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

#ifndef SWMPC_POLYTOPE_HPP
#define SWMPC_POLYTOPE_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace swmpc {

/// Chebyshev radius below which a polytope is treated as empty (measure zero).
inline constexpr double kEmptyRadius = 1e-9;

/// Largest inscribed Euclidean ball. `radius` is negative when the polytope is
/// infeasible and +infinity when balls of every size fit.
struct ChebyshevBall {
  Eigen::VectorXd center;
  double radius = -1.0;
};

/// Axis-aligned bounds recovered from an H-representation whose every row
/// involves a single coordinate.
struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

/// Convex polyhedron {x : H x <= h} in H-representation.
///
/// Despite the name, unbounded sets (half-spaces, the nonnegative orthant)
/// are representable; operations that need boundedness check for it.
class Polytope {
 public:
  Polytope(Eigen::MatrixXd H, Eigen::VectorXd h);

  static Polytope box(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);
  /// The cube [-r, r]^n.
  static Polytope box(int n, double r);
  /// Degenerate polytope {0}, encoded as {x <= 0, -x <= 0}.
  static Polytope origin(int n);
  static Polytope nonnegative_orthant(int n);
  /// {x >= 0 : sum(x) <= level}.
  static Polytope capped_orthant(int n, double level);
  /// All of R^n, stored as the trivially satisfied row 0'x <= 1.
  static Polytope whole_space(int n);

  int dim() const { return static_cast<int>(H_.cols()); }
  int rows() const { return static_cast<int>(H_.rows()); }
  const Eigen::MatrixXd& H() const { return H_; }
  const Eigen::VectorXd& h() const { return h_; }

  /// max_i (H_i x - h_i); nonpositive exactly when x is a member.
  double max_violation(const Eigen::VectorXd& x) const;
  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;

  /// Present when every row constrains a single coordinate and every
  /// coordinate is bounded on both sides.
  const std::optional<Box>& as_box() const { return box_; }

  ChebyshevBall chebyshev() const;
  /// Empty up to measure zero: Chebyshev radius below `radius_tol`.
  bool is_empty(double radius_tol = kEmptyRadius) const;
  /// Some x satisfies H x <= h + tol (accepts lower-dimensional sets).
  bool is_feasible(double tol = 1e-9) const;
  bool is_bounded() const;
  /// The unique member when the set is a single point (every coordinate
  /// range below `tol`); nullopt otherwise or when empty.
  std::optional<Eigen::VectorXd> as_point(double tol = 1e-10) const;

  /// max d'x over the set. nullopt when unbounded in direction d.
  /// Throws when the set is infeasible.
  std::optional<double> support(const Eigen::VectorXd& direction) const;
  /// Upper bound on max ||x||_2 over the set (via coordinate ranges);
  /// +infinity when unbounded.
  double norm_bound() const;

  Polytope intersect(const Polytope& other) const;
  /// The set scaled about the origin: {x : H x <= factor h} = factor * P.
  Polytope scaled(double factor) const;
  /// Same set with unit-norm rows; all-zero rows are dropped unless they are
  /// the only row.
  Polytope normalized() const;
  /// Same set with rows that are implied by the others removed.
  Polytope without_redundant_rows(double tol = 1e-9) const;

 private:
  Eigen::MatrixXd H_;
  Eigen::VectorXd h_;
  std::optional<Box> box_;
};

/// Finite union of polytopes. No parts denotes the empty set.
struct PolytopeUnion {
  std::vector<Polytope> parts;

  PolytopeUnion() = default;
  PolytopeUnion(std::vector<Polytope> p) : parts(std::move(p)) {}
  PolytopeUnion(Polytope p) { parts.push_back(std::move(p)); }

  bool empty() const { return parts.empty(); }
  std::size_t size() const { return parts.size(); }
  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
  /// max over parts of Polytope::norm_bound().
  double norm_bound() const;
};

}  // namespace swmpc

#endif  // SWMPC_POLYTOPE_HPP
