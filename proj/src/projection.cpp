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

#include "swmpc/projection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace swmpc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Constraints are handled in the form n_j' y >= b_j with n_j = -H_j', b_j = -h_j.
Eigen::VectorXd dual_active_set(const Eigen::MatrixXd& H, const Eigen::VectorXd& h,
                                const Eigen::VectorXd& x) {
  const auto n = x.size();
  const auto m = H.rows();
  const Eigen::VectorXd row_norm = H.rowwise().norm();
  const double feas_tol = 1e-12 * (1.0 + h.cwiseAbs().maxCoeff() + x.cwiseAbs().maxCoeff());

  Eigen::VectorXd y = x;
  std::vector<Eigen::Index> active;
  std::vector<double> u;  // multipliers of the active constraints

  const int max_iter = static_cast<int>(50 * (m + n) + 100);
  for (int iter = 0; iter < max_iter; ++iter) {
    // Most violated constraint, measured in Euclidean distance.
    Eigen::Index p = -1;
    double worst = feas_tol;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (row_norm(j) == 0.0) {
        if (h(j) < -feas_tol) throw std::invalid_argument("projection onto an empty polytope");
        continue;
      }
      const double v = (H.row(j).dot(y) - h(j)) / row_norm(j);
      if (v > worst) {
        worst = v;
        p = j;
      }
    }
    if (p == -1) return y;

    const Eigen::VectorXd np = -H.row(p).transpose();
    double up = 0.0;
    while (true) {
      const auto k = static_cast<Eigen::Index>(active.size());
      Eigen::VectorXd z = np;
      Eigen::VectorXd r = Eigen::VectorXd::Zero(k);
      if (k > 0) {
        Eigen::MatrixXd N(n, k);
        for (Eigen::Index i = 0; i < k; ++i) N.col(i) = -H.row(active[i]).transpose();
        r = N.colPivHouseholderQr().solve(np);
        z = np - N * r;
      }
      // Partial (dual) step: largest t keeping active multipliers nonnegative.
      double t1 = kInf;
      Eigen::Index drop = -1;
      for (Eigen::Index i = 0; i < k; ++i) {
        if (r(i) > 1e-14) {
          const double t = u[i] / r(i);
          if (t < t1) {
            t1 = t;
            drop = i;
          }
        }
      }
      // Full (primal) step: makes constraint p active.
      const double slack = np.dot(y) + h(p);  // n_p'y - b_p, negative while violated
      const double zz = z.dot(np);
      const bool z_zero = z.norm() <= 1e-13 * np.norm();
      const double t2 = z_zero ? kInf : -slack / zz;
      const double t = std::min(t1, t2);
      if (!std::isfinite(t)) throw std::invalid_argument("projection onto an empty polytope");

      if (!z_zero) y += t * z;
      for (Eigen::Index i = 0; i < k; ++i) u[i] -= t * r(i);
      up += t;
      if (t == t2) {
        active.push_back(p);
        u.push_back(up);
        break;
      }
      active.erase(active.begin() + drop);
      u.erase(u.begin() + drop);
    }
  }
  throw std::runtime_error("projection did not converge");
}

}  // namespace

Eigen::VectorXd project(const Polytope& set, const Eigen::VectorXd& x) {
  if (set.contains(x)) return x;
  if (const auto& box = set.as_box()) return x.cwiseMax(box->lower).cwiseMin(box->upper);
  return dual_active_set(set.H(), set.h(), x);
}

double distance(const Polytope& set, const Eigen::VectorXd& x) {
  if (set.contains(x)) return 0.0;
  return (x - project(set, x)).norm();
}

}  // namespace swmpc
