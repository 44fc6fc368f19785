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

#include "swmpc/linprog.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace swmpc::lp {
namespace {

constexpr double kEps = 1e-11;

// Tableau for: maximize c'y s.t. A y <= b, y >= 0.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
          const Eigen::VectorXd& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        width_(n_ + 2),
        basic_(m_),
        nonbasic_(n_ + 1),
        d_((m_ + 2) * width_, 0.0) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) at(i, j) = A(i, j);
      basic_[i] = n_ + i;
      at(i, n_) = -1.0;
      at(i, n_ + 1) = b(i);
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      at(m_, j) = -c(j);
    }
    nonbasic_[n_] = -1;
    at(m_ + 1, n_) = 1.0;
    pivot_budget_ = 50 * (m_ + n_ + 2);
  }

  Result solve() {
    Result result;
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
    if (m_ > 0 && at(r, n_ + 1) < -kEps) {
      pivot(r, n_);
      if (!simplex(1) || at(m_ + 1, n_ + 1) < -1e-9) {
        result.status = Status::kInfeasible;
        return result;
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        int s = -1;
        for (int j = 0; j <= n_; ++j)
          if (s == -1 || at(i, j) < at(i, s) ||
              (at(i, j) == at(i, s) && nonbasic_[j] < nonbasic_[s]))
            s = j;
        pivot(i, s);
      }
    }
    if (!simplex(2)) {
      result.status = Status::kUnbounded;
      result.value = std::numeric_limits<double>::infinity();
      return result;
    }
    result.status = Status::kOptimal;
    result.x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i)
      if (basic_[i] >= 0 && basic_[i] < n_) result.x(basic_[i]) = at(i, n_ + 1);
    result.value = at(m_, n_ + 1);
    return result;
  }

 private:
  double& at(int i, int j) { return d_[static_cast<std::size_t>(i) * width_ + j]; }

  void pivot(int r, int s) {
    const double inv = 1.0 / at(r, s);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      const double f = at(i, s) * inv;
      if (f == 0.0) continue;
      for (int j = 0; j < n_ + 2; ++j)
        if (j != s) at(i, j) -= at(r, j) * f;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) at(r, j) *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) at(i, s) *= -inv;
    at(r, s) = inv;
    std::swap(basic_[r], nonbasic_[s]);
    ++pivots_;
  }

  bool simplex(int phase) {
    const int x = phase == 1 ? m_ + 1 : m_;
    while (true) {
      const bool bland = pivots_ > pivot_budget_;
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasic_[j] == -1) continue;
        if (bland) {
          if (at(x, j) < -kEps && (s == -1 || nonbasic_[j] < nonbasic_[s])) s = j;
        } else if (s == -1 || at(x, j) < at(x, s) ||
                   (at(x, j) == at(x, s) && nonbasic_[j] < nonbasic_[s])) {
          s = j;
        }
      }
      if (s == -1 || at(x, s) > -kEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (at(i, s) < kEps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const double lhs = at(i, n_ + 1) / at(i, s);
        const double rhs = at(r, n_ + 1) / at(r, s);
        if (lhs < rhs || (lhs == rhs && basic_[i] < basic_[r])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_;
  int n_;
  int width_;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
  std::vector<double> d_;
  long pivots_ = 0;
  long pivot_budget_ = 0;
};

}  // namespace

Result maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                const Eigen::VectorXd& c) {
  const auto n = c.size();
  // Free variables x = u - v with u, v >= 0.
  Eigen::MatrixXd split(A.rows(), 2 * n);
  split << A, -A;
  Eigen::VectorXd c2(2 * n);
  c2 << c, -c;
  Result r = Tableau(split, b, c2).solve();
  if (r.optimal()) {
    Eigen::VectorXd x = r.x.head(n) - r.x.tail(n);
    r.x = std::move(x);
  }
  return r;
}

}  // namespace swmpc::lp
