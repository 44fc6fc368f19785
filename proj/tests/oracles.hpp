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

// Independent reference implementations used as test oracles. None of these
// call into the library's solvers; they trade speed for obviousness.

#ifndef SWMPC_TESTS_ORACLES_HPP
#define SWMPC_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "swmpc/controller.hpp"
#include "swmpc/polytope.hpp"
#include "swmpc/switched_system.hpp"

namespace swmpc::oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Projection onto {y : H y <= h} by enumerating every candidate active set of
/// at most n rows and keeping the closest primal-feasible KKT point.
inline std::optional<Eigen::VectorXd> project(const Eigen::MatrixXd& H, const Eigen::VectorXd& h,
                                              const Eigen::VectorXd& x, double tol = 1e-9) {
  const int m = static_cast<int>(H.rows());
  const int n = static_cast<int>(H.cols());
  auto feasible = [&](const Eigen::VectorXd& y) { return ((H * y - h).array() <= tol).all(); };
  if (feasible(x)) return x;
  std::optional<Eigen::VectorXd> best;
  double best_d = kInf;
  std::vector<int> idx;
  // Recursive subset enumeration, subsets in increasing index order.
  auto visit = [&](auto&& self, int from) -> void {
    if (!idx.empty()) {
      Eigen::MatrixXd HS(idx.size(), n);
      Eigen::VectorXd hS(idx.size());
      for (std::size_t r = 0; r < idx.size(); ++r) {
        HS.row(r) = H.row(idx[r]);
        hS[r] = h[idx[r]];
      }
      const Eigen::MatrixXd G = HS * HS.transpose();
      Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
      if (lu.rank() == static_cast<int>(idx.size())) {
        const Eigen::VectorXd lambda = lu.solve(HS * x - hS);
        const Eigen::VectorXd y = x - HS.transpose() * lambda;
        const double d = (y - x).norm();
        if ((lambda.array() >= -tol).all() && feasible(y) && d < best_d) {
          best_d = d;
          best = y;
        }
      }
    }
    if (static_cast<int>(idx.size()) == n) return;
    for (int i = from; i < m; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  visit(visit, 0);
  return best;
}

inline double distance(const Polytope& P, const Eigen::VectorXd& x) {
  const auto y = project(P.H(), P.h(), x);
  return y ? (*y - x).norm() : kInf;
}

inline double distance(const PolytopeUnion& U, const Eigen::VectorXd& x) {
  double d = kInf;
  for (const auto& p : U.parts) d = std::min(d, distance(p, x));
  return d;
}

/// Length of the maximal constant run of `s` containing position j.
inline int run_length(const std::vector<int>& s, int j) {
  int a = j, b = j;
  while (a > 0 && s[a - 1] == s[j]) --a;
  while (b + 1 < static_cast<int>(s.size()) && s[b + 1] == s[j]) ++b;
  return b - a + 1;
}

/// Waiting and cycle rules on memory ++ path, phrased per position and per
/// switching instant rather than per pack.
inline bool waiting_ok(const OcpProblem& p, const SwitchingPath& path) {
  std::vector<int> s(p.memory.begin(), p.memory.end());
  s.insert(s.end(), path.begin(), path.end());
  const int m = static_cast<int>(p.memory.size());
  const auto& w = p.system.waiting();
  if (p.enforce_waiting) {
    for (int j = m; j < static_cast<int>(s.size()); ++j)
      if (run_length(s, j) > w[s[j]].upper) return false;
    // At every switching instant inside the prediction, the pack just closed
    // must have lasted at least L.
    for (int b = std::max(m, 1); b < static_cast<int>(s.size()); ++b)
      if (s[b] != s[b - 1] && run_length(s, b - 1) < w[s[b - 1]].lower) return false;
  }
  if (p.enforce_cycle) {
    const int q = p.system.q();
    for (int b = std::max(m, 1); b < static_cast<int>(s.size()); ++b) {
      if (s[b] == s[b - 1]) continue;
      // signals of the q-1 packs ending at b-1
      int i = b - 1, seen = 0;
      while (i >= 0 && seen < q - 1) {
        if (s[i] == s[b]) return false;
        const int sig = s[i];
        while (i >= 0 && s[i] == sig) --i;
        ++seen;
      }
    }
  }
  return true;
}

struct Enumerated {
  bool feasible = false;
  double cost = kInf;
  SwitchingPath path;
};

/// Exhaustive search over all q^N sequences with oracle distances.
inline Enumerated solve_by_enumeration(const OcpProblem& p, double member_tol = 1e-9) {
  const int q = p.system.q();
  const int N = p.horizon;
  long total = 1;
  for (int k = 0; k < N; ++k) total *= q;
  Enumerated best;
  SwitchingPath path(N);
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int k = N - 1; k >= 0; --k) {
      path[k] = static_cast<int>(c % q);
      c /= q;
    }
    if (!waiting_ok(p, path)) continue;
    std::vector<Eigen::VectorXd> xs{p.x};
    for (int k = 0; k < N; ++k) xs.push_back(p.system.matrices()[path[k]] * xs.back());
    bool ok = true;
    for (int k = 0; k < N && ok; ++k)
      ok = ((p.system.state_set().H() * xs[k] - p.system.state_set().h()).array() <= member_tol).all();
    if (!ok) continue;
    if (p.enforce_terminal) {
      bool in = false;
      for (const auto& part : p.target.parts)
        in = in || ((part.H() * xs[N] - part.h()).array() <= member_tol).all();
      if (!in) continue;
    }
    double cost = 0.0;
    for (int k = 0; k < N; ++k) cost += p.cost.stage[path[k]] * distance(p.target, xs[k]);
    cost += p.cost.terminal * distance(p.target, xs[N]);
    if (!p.cost.consecutive.empty()) {
      std::vector<int> s;
      if (p.cost.consecutive_includes_memory) s.assign(p.memory.begin(), p.memory.end());
      const int off = static_cast<int>(s.size());
      s.insert(s.end(), path.begin(), path.end());
      for (int j = off; j < static_cast<int>(s.size()); ++j) {
        const double len = run_length(s, j);
        cost += p.cost.consecutive[s[j]] * len * len;
      }
    }
    if (!best.feasible || cost < best.cost) {
      best = {true, cost, path};
    }
  }
  return best;
}

/// Random OCP instance: n <= 3, q <= 3, N <= 6, random waiting bounds.
inline OcpProblem random_problem(std::mt19937& rng) {
  std::uniform_int_distribution<int> dn(1, 3), dq(1, 3), dN(1, 6), coin(0, 1);
  std::uniform_real_distribution<double> entry(-1.3, 1.3), w(0.5, 2.0), pos(-2.0, 2.0);
  const int n = dn(rng), q = dq(rng), N = dN(rng);
  std::vector<Eigen::MatrixXd> A;
  for (int i = 0; i < q; ++i) {
    Eigen::MatrixXd M(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) M(r, c) = entry(rng);
    A.push_back(M);
  }
  std::vector<WaitingBounds> wait;
  for (int i = 0; i < q; ++i) {
    const int L = std::uniform_int_distribution<int>(1, 2)(rng);
    wait.push_back({L, L + std::uniform_int_distribution<int>(0, 2)(rng)});
  }
  const Polytope X = coin(rng) ? Polytope::box(n, 6.0) : Polytope::whole_space(n);
  SwitchedSystem sys(A, X, wait);

  Eigen::VectorXd lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = -std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    hi[i] = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
  }
  Polytope target = Polytope::box(lo, hi);
  if (coin(rng) && n > 1) {
    // clip one corner so the target is a general polytope
    Eigen::MatrixXd H(1, n);
    for (int c = 0; c < n; ++c) H(0, c) = entry(rng);
    target = target.intersect(Polytope(H, Eigen::VectorXd::Constant(1, 0.05)));
  }
  PolytopeUnion omega(target);
  if (coin(rng) && coin(rng)) omega.parts.push_back(Polytope::box(n, 0.2).scaled(0.5));

  CostSpec cost;
  for (int i = 0; i < q; ++i) cost.stage.push_back(w(rng));
  cost.terminal = w(rng);
  if (coin(rng)) {
    for (int i = 0; i < q; ++i) cost.consecutive.push_back(w(rng) - 0.5);
    cost.consecutive_includes_memory = coin(rng);
  }

  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = pos(rng);

  SwitchingPath memory(std::uniform_int_distribution<int>(0, sys.max_upper())(rng));
  for (auto& s : memory) s = std::uniform_int_distribution<int>(0, q - 1)(rng);

  OcpProblem p{sys, x, N, omega, cost, memory};
  p.enforce_waiting = coin(rng) || coin(rng);
  p.enforce_terminal = coin(rng) && coin(rng);
  p.enforce_cycle = q > 1 && coin(rng) && coin(rng);
  return p;
}

}  // namespace swmpc::oracle

#endif  // SWMPC_TESTS_ORACLES_HPP
