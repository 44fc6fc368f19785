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

#include "swmpc/polytope.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "swmpc/projection.hpp"

namespace swmpc {
namespace {

TEST(PolytopeTest, RejectsMalformedInput) {
  EXPECT_THROW(Polytope(Eigen::MatrixXd(0, 2), Eigen::VectorXd(0)), DimensionError);
  EXPECT_THROW(Polytope(Eigen::MatrixXd::Ones(2, 2), Eigen::VectorXd::Ones(3)),
               DimensionError);
  Eigen::VectorXd h = Eigen::VectorXd::Ones(2);
  h[1] = std::nan("");
  EXPECT_THROW(Polytope(Eigen::MatrixXd::Identity(2, 2), h), std::invalid_argument);
}

TEST(PolytopeTest, BoxQueries) {
  const Polytope B = Polytope::box(2, 1.0);
  ASSERT_TRUE(B.as_box().has_value());
  EXPECT_TRUE(B.contains(Eigen::Vector2d(1.0, -1.0)));
  EXPECT_FALSE(B.contains(Eigen::Vector2d(1.0 + 1e-6, 0.0)));
  EXPECT_TRUE(B.is_bounded());
  EXPECT_FALSE(B.is_empty());
  EXPECT_NEAR(B.chebyshev().radius, 1.0, 1e-9);
  EXPECT_NEAR(B.norm_bound(), std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(*B.support(Eigen::Vector2d(1.0, 2.0)), 3.0, 1e-9);
}

TEST(PolytopeTest, OriginIsFeasibleButMeasureZero) {
  const Polytope O = Polytope::origin(3);
  EXPECT_TRUE(O.is_empty());
  EXPECT_TRUE(O.is_feasible());
  ASSERT_TRUE(O.as_point().has_value());
  EXPECT_NEAR(O.as_point()->norm(), 0.0, 1e-12);
}

TEST(PolytopeTest, UnboundedSets) {
  EXPECT_FALSE(Polytope::nonnegative_orthant(2).is_bounded());
  EXPECT_FALSE(Polytope::whole_space(2).is_bounded());
  EXPECT_TRUE(std::isinf(Polytope::whole_space(2).norm_bound()));
  EXPECT_FALSE(Polytope::nonnegative_orthant(2).support(Eigen::Vector2d(1, 0)).has_value());
  EXPECT_TRUE(Polytope::capped_orthant(2, 50.0).is_bounded());
}

TEST(PolytopeTest, InfeasibleSet) {
  Eigen::MatrixXd H(2, 1);
  H << 1, -1;
  const Polytope P(H, Eigen::Vector2d(-1, -1));  // x <= -1 and x >= 1
  EXPECT_TRUE(P.is_empty());
  EXPECT_FALSE(P.is_feasible());
  EXPECT_LT(P.chebyshev().radius, 0.0);
  EXPECT_THROW(P.support(Eigen::VectorXd::Ones(1)), std::exception);
}

TEST(PolytopeTest, ScalingAndIntersection) {
  const Polytope B = Polytope::box(2, 1.0);
  EXPECT_TRUE(B.scaled(2.0).contains(Eigen::Vector2d(2.0, 2.0)));
  Eigen::MatrixXd H(1, 2);
  H << 1, 1;
  const Polytope half(H, Eigen::VectorXd::Zero(1));
  const Polytope I = B.intersect(half);
  EXPECT_TRUE(I.contains(Eigen::Vector2d(-1, 0.5)));
  EXPECT_FALSE(I.contains(Eigen::Vector2d(0.5, 0.5)));
}

TEST(PolytopeTest, RedundantRowsAreRemoved) {
  Eigen::MatrixXd H(5, 2);
  H << 1, 0, -1, 0, 0, 1, 0, -1, 1, 1;
  Eigen::VectorXd h(5);
  h << 1, 1, 1, 1, 10;  // last row is implied by the box
  const Polytope P = Polytope(H, h).without_redundant_rows();
  EXPECT_EQ(P.rows(), 4);
  const Polytope N = Polytope(H * 3.0, h * 3.0).normalized();
  EXPECT_NEAR(N.H().row(4).norm(), 1.0, 1e-12);
}

TEST(ProjectionTest, ClosedFormCases) {
  // origin singleton: distance is the Euclidean norm
  EXPECT_DOUBLE_EQ(distance(Polytope::origin(2), Eigen::Vector2d(3, 4)), 5.0);
  // box: clamp to the corner (1, 1)
  EXPECT_NEAR(distance(Polytope::box(2, 1.0), Eigen::Vector2d(2, 3)), std::sqrt(5.0), 1e-12);
  EXPECT_EQ(distance(Polytope::box(2, 1.0), Eigen::Vector2d(0.2, -0.3)), 0.0);
}

TEST(ProjectionTest, SimplexCorner) {
  // {x >= 0, x1 + x2 <= 1}: the point (2, 2) projects to (0.5, 0.5)
  const Polytope S = Polytope::capped_orthant(2, 1.0);
  const Eigen::VectorXd y = project(S, Eigen::Vector2d(2, 2));
  EXPECT_NEAR(y[0], 0.5, 1e-9);
  EXPECT_NEAR(y[1], 0.5, 1e-9);
  // (3, -1) projects to the vertex (1, 0)
  const Eigen::VectorXd z = project(S, Eigen::Vector2d(3, -1));
  EXPECT_NEAR(z[0], 1.0, 1e-9);
  EXPECT_NEAR(z[1], 0.0, 1e-9);
}

TEST(ProjectionTest, EmptySetThrows) {
  Eigen::MatrixXd H(2, 1);
  H << 1, -1;
  EXPECT_THROW(project(Polytope(H, Eigen::Vector2d(-1, -1)), Eigen::VectorXd::Zero(1)),
               std::invalid_argument);
}

TEST(ProjectionTest, AgreesWithActiveSetEnumeration) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + trial % 3;
    const int m = n + 1 + trial % 5;
    Eigen::MatrixXd H(m, n);
    Eigen::VectorXd h(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) H(i, j) = u(rng);
      h[i] = std::abs(u(rng)) + 0.05;  // origin strictly inside
    }
    const Polytope P = Polytope(H, h).intersect(Polytope::box(n, 3.0));
    Eigen::VectorXd x(n);
    for (int j = 0; j < n; ++j) x[j] = 4.0 * u(rng);
    const auto ref = oracle::project(P.H(), P.h(), x);
    ASSERT_TRUE(ref.has_value());
    const Eigen::VectorXd y = project(P, x);
    EXPECT_LE(P.max_violation(y), 1e-9) << "trial " << trial;
    EXPECT_NEAR((y - x).norm(), (*ref - x).norm(), 1e-9) << "trial " << trial;
    ++checked;
  }
  EXPECT_EQ(checked, 400);
}

TEST(ProjectionTest, DistanceIsLipschitzAndVanishesOnMembers) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const Polytope P = Polytope::capped_orthant(3, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Vector3d a(u(rng), u(rng), u(rng)), b(u(rng), u(rng), u(rng));
    const double da = distance(P, a), db = distance(P, b);
    EXPECT_LE(std::abs(da - db), (a - b).norm() + 1e-9);
    EXPECT_EQ(da <= 1e-9, P.contains(a, 1e-9));
  }
}

}  // namespace
}  // namespace swmpc
