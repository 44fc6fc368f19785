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

#include "swmpc/scenarios.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace swmpc {
namespace {

double spectral_radius(const Eigen::MatrixXd& A) { return A.eigenvalues().cwiseAbs().maxCoeff(); }

TEST(ExpmTest, DiagonalClosedForm) {
  const Eigen::Vector3d d(-5.32, 0.4, 1.2);
  const Eigen::MatrixXd E = expm(Eigen::MatrixXd(d.asDiagonal()));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(E(i, i) / std::exp(d[i]), 1.0, 1e-12);
  EXPECT_EQ((E - Eigen::MatrixXd(E.diagonal().asDiagonal())).norm(), 0.0);
}

TEST(ExpmTest, NilpotentClosedForm) {
  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(3, 3);
  N(0, 1) = 2.0;
  N(1, 2) = 3.0;
  // exp(N) = I + N + N^2 / 2
  const Eigen::MatrixXd ref = Eigen::MatrixXd::Identity(3, 3) + N + N * N / 2.0;
  EXPECT_LT((expm(N) - ref).norm() / ref.norm(), 1e-12);
}

TEST(ExpmTest, SemigroupOnScenarioGenerators) {
  for (int id : {1, 2}) {
    const ViralParameters p = viral_parameters(id);
    for (const auto& r : p.rates) {
      const Eigen::Matrix4d Z = (Eigen::Matrix4d(r.asDiagonal()) -
                                 p.delta * Eigen::Matrix4d::Identity() + p.mu * p.M) * p.tau;
      const Eigen::MatrixXd E = expm(Z);
      const Eigen::MatrixXd E2 = expm(2.0 * Z);
      EXPECT_LT((E * E - E2).norm(), 1e-9 * E2.norm());
    }
  }
  EXPECT_THROW(expm(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
}

TEST(ViralTest, Parameters) {
  const ViralParameters p = viral_parameters(1);
  EXPECT_EQ(p.M, p.M.transpose());
  EXPECT_EQ(p.M.diagonal(), Eigen::Vector4d::Zero());
  EXPECT_EQ(p.M.rowwise().sum(), Eigen::Vector4d::Constant(2.0));
  EXPECT_EQ(p.M(0, 1), 1.0);
  EXPECT_EQ(p.M(1, 3), 1.0);
  EXPECT_EQ(p.M(3, 2), 1.0);
  EXPECT_EQ(p.M(2, 0), 1.0);
  EXPECT_EQ(p.M(0, 3), 0.0);
  EXPECT_EQ(p.M(1, 2), 0.0);
  EXPECT_EQ(p.steps(), 12);
  EXPECT_NEAR(total_load(p.x0), 1000.20002, 1e-9);
  EXPECT_NEAR(p.x0[3], p.mu * p.x0[1] + p.mu * p.x0[2], 1e-18);
  EXPECT_THROW(viral_parameters(3), std::invalid_argument);
}

TEST(ViralTest, MutationFreeLimitIsDiagonal) {
  ViralParameters p = viral_parameters(1);
  p.mu = 0.0;
  const SwitchedSystem sys = build_viral_system(p);
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j)
          EXPECT_NEAR(sys.matrix(s)(i, i) / std::exp((p.rates[s][i] - p.delta) * p.tau), 1.0, 1e-12);
        else
          EXPECT_EQ(sys.matrix(s)(i, j), 0.0);
      }
}

TEST(ViralTest, Discretization) {
  const ViralParameters p = viral_parameters(1);
  const SwitchedSystem sys = build_viral_system(p);
  EXPECT_EQ(sys.q(), 2);
  for (int s = 0; s < 2; ++s) {
    // scaled Taylor series, squared back up
    Eigen::Matrix4d Z = p.tau * (p.mu * p.M);
    Z.diagonal() += p.tau * (p.rates[s].array() - p.delta).matrix();
    const int squarings = 12;
    Z /= std::pow(2.0, squarings);
    Eigen::Matrix4d E = Eigen::Matrix4d::Identity(), term = E;
    for (int k = 1; k < 20; ++k) {
      term = term * Z / k;
      E += term;
    }
    for (int k = 0; k < squarings; ++k) E = E * E;
    const Eigen::MatrixXd& A = sys.matrix(s);
    EXPECT_LT((A - E).cwiseAbs().maxCoeff(), 1e-10 * E.cwiseAbs().maxCoeff());
    EXPECT_GT(A.minCoeff(), 0.0);  // Metzler generator
  }
  EXPECT_FALSE(sys.state_set().is_bounded());
  EXPECT_TRUE(sys.state_set().contains(Eigen::Vector4d::Zero()));
}

TEST(CancerTest, MatricesAndStability) {
  const CancerParameters p = cancer_parameters();
  const SwitchedSystem sys = build_cancer_system(p);
  Eigen::Matrix2d AP, AB, AT;
  AP << 0.755, 0.081, 0.169, 0.843;
  AB << 0.896, 0, 0.186, 1.083;
  AT << 1.030, 0.231, 0.022, 0.821;
  EXPECT_EQ(sys.matrix(0), Eigen::MatrixXd(AP));
  EXPECT_EQ(sys.matrix(1), Eigen::MatrixXd(AB));
  EXPECT_EQ(sys.matrix(2), Eigen::MatrixXd(AT));
  EXPECT_NEAR(spectral_radius(AP), 0.924, 1e-3);
  EXPECT_LT(spectral_radius(AP), 1.0);
  EXPECT_NEAR(spectral_radius(AB), 1.083, 1e-12);
  EXPECT_GT(spectral_radius(AT), 1.0);
  EXPECT_EQ(sys.waiting()[0].upper, 4);
  EXPECT_EQ(sys.waiting()[1].upper, 8);
  EXPECT_EQ(sys.waiting()[2].upper, 6);
  for (const auto& w : sys.waiting()) EXPECT_EQ(w.lower, 2);
  const Eigen::Vector2d y = AP * p.x0;
  EXPECT_NEAR(y[0], 215.672, 1e-9);
  EXPECT_NEAR(y[1], 553.096, 1e-9);
}

TEST(TotalLoadTest, Examples) {
  EXPECT_EQ(total_load(Eigen::Vector4d::Zero()), 0.0);
  EXPECT_EQ(total_load(Eigen::Vector2d(220, 612)), 832.0);
}

TEST(ScenarioTest, BuiltinsResolve) {
  for (const auto& name : builtin_scenario_names()) {
    const Scenario s = builtin_scenario(name);
    EXPECT_EQ(s.name, name);
    EXPECT_NO_THROW(s.problem().validate());
  }
  EXPECT_THROW(builtin_scenario("viral-3"), std::invalid_argument);
  EXPECT_THROW(cancer_case(4), std::invalid_argument);
  EXPECT_EQ(cancer_case(3).cost.consecutive, (std::vector<double>{20.0, 1.0, 2.0}));
  EXPECT_EQ(cancer_scenario().time_at(2), 24.0);
  EXPECT_EQ(viral_scenario(1).time_at(2), 56.0);
}

}  // namespace
}  // namespace swmpc
