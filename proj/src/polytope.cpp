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

#include <algorithm>
#include <cmath>
#include <limits>

#include "swmpc/errors.hpp"
#include "swmpc/linprog.hpp"

namespace swmpc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRadiusCap = 1e9;

std::optional<Box> detect_box(const Eigen::MatrixXd& H, const Eigen::VectorXd& h) {
  const auto n = H.cols();
  Box box{Eigen::VectorXd::Constant(n, -kInf), Eigen::VectorXd::Constant(n, kInf)};
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    Eigen::Index coord = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (H(i, j) == 0.0) continue;
      if (coord != -1) return std::nullopt;
      coord = j;
    }
    if (coord == -1) {
      if (h(i) < 0.0) return std::nullopt;
      continue;
    }
    const double bound = h(i) / H(i, coord);
    if (H(i, coord) > 0.0) {
      box.upper(coord) = std::min(box.upper(coord), bound);
    } else {
      box.lower(coord) = std::max(box.lower(coord), bound);
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!std::isfinite(box.lower(j)) || !std::isfinite(box.upper(j))) return std::nullopt;
    if (box.lower(j) > box.upper(j)) return std::nullopt;
  }
  return box;
}

}  // namespace

Polytope::Polytope(Eigen::MatrixXd H, Eigen::VectorXd h) : H_(std::move(H)), h_(std::move(h)) {
  if (H_.rows() < 1 || H_.cols() < 1)
    throw DimensionError("polytope needs at least one row and one column");
  if (H_.rows() != h_.size())
    throw DimensionError("polytope H has " + std::to_string(H_.rows()) +
                         " rows but h has " + std::to_string(h_.size()) + " entries");
  if (!H_.allFinite() || !h_.allFinite())
    throw std::invalid_argument("polytope data must be finite");
  box_ = detect_box(H_, h_);
}

Polytope Polytope::box(const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  const auto n = lower.size();
  if (upper.size() != n) throw DimensionError("box bounds differ in size");
  Eigen::MatrixXd H(2 * n, n);
  H << Eigen::MatrixXd::Identity(n, n), -Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd h(2 * n);
  h << upper, -lower;
  return Polytope(std::move(H), std::move(h));
}

Polytope Polytope::box(int n, double r) {
  return box(Eigen::VectorXd::Constant(n, -r), Eigen::VectorXd::Constant(n, r));
}

Polytope Polytope::origin(int n) { return box(n, 0.0); }

Polytope Polytope::nonnegative_orthant(int n) {
  return Polytope(-Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n));
}

Polytope Polytope::capped_orthant(int n, double level) {
  Eigen::MatrixXd H(n + 1, n);
  H << -Eigen::MatrixXd::Identity(n, n), Eigen::RowVectorXd::Ones(n);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(n + 1);
  h(n) = level;
  return Polytope(std::move(H), std::move(h));
}

Polytope Polytope::whole_space(int n) {
  return Polytope(Eigen::MatrixXd::Zero(1, n), Eigen::VectorXd::Ones(1));
}

double Polytope::max_violation(const Eigen::VectorXd& x) const {
  if (x.size() != dim())
    throw DimensionError("point has dimension " + std::to_string(x.size()) +
                         ", polytope has " + std::to_string(dim()));
  return (H_ * x - h_).maxCoeff();
}

bool Polytope::contains(const Eigen::VectorXd& x, double tol) const {
  return max_violation(x) <= tol;
}

ChebyshevBall Polytope::chebyshev() const {
  const int n = dim();
  const int m = rows();
  Eigen::MatrixXd A(m + 1, n + 1);
  A.setZero();
  A.topLeftCorner(m, n) = H_;
  A.col(n).head(m) = H_.rowwise().norm();
  A(m, n) = 1.0;
  Eigen::VectorXd b(m + 1);
  b << h_, kRadiusCap;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  c(n) = 1.0;
  const lp::Result r = lp::maximize(A, b, c);
  ChebyshevBall ball;
  if (!r.optimal()) {
    ball.center = Eigen::VectorXd::Zero(n);
    ball.radius = r.status == lp::Status::kUnbounded ? kInf : -kInf;
    return ball;
  }
  ball.center = r.x.head(n);
  ball.radius = r.x(n) >= kRadiusCap * (1.0 - 1e-12) ? kInf : r.x(n);
  return ball;
}

bool Polytope::is_empty(double radius_tol) const { return chebyshev().radius < radius_tol; }

bool Polytope::is_feasible(double tol) const {
  if (box_) return true;
  const Eigen::VectorXd b = h_.array() + tol;
  return lp::maximize(H_, b, Eigen::VectorXd::Zero(dim())).status != lp::Status::kInfeasible;
}

std::optional<double> Polytope::support(const Eigen::VectorXd& direction) const {
  if (direction.size() != dim()) throw DimensionError("support direction has wrong dimension");
  if (box_) {
    double v = 0.0;
    for (int j = 0; j < dim(); ++j)
      v += direction(j) * (direction(j) >= 0.0 ? box_->upper(j) : box_->lower(j));
    return v;
  }
  const lp::Result r = lp::maximize(H_, h_, direction);
  if (r.status == lp::Status::kInfeasible)
    throw std::invalid_argument("support function of an empty polytope");
  if (r.status == lp::Status::kUnbounded) return std::nullopt;
  return r.value;
}

bool Polytope::is_bounded() const {
  if (box_) return true;
  if (!is_feasible(0.0)) return true;
  for (int j = 0; j < dim(); ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim());
    e(j) = 1.0;
    if (!support(e) || !support(-e)) return false;
  }
  return true;
}

double Polytope::norm_bound() const {
  double sq = 0.0;
  for (int j = 0; j < dim(); ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim());
    e(j) = 1.0;
    const auto hi = support(e);
    const auto lo = support(-e);
    if (!hi || !lo) return kInf;
    const double r = std::max(std::abs(*hi), std::abs(*lo));
    sq += r * r;
  }
  return std::sqrt(sq);
}

std::optional<Eigen::VectorXd> Polytope::as_point(double tol) const {
  if (!is_feasible(0.0)) return std::nullopt;
  Eigen::VectorXd p(dim());
  for (int j = 0; j < dim(); ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim());
    e(j) = 1.0;
    const auto hi = support(e);
    const auto lo = support(-e);
    if (!hi || !lo) return std::nullopt;
    if (*hi + *lo > tol) return std::nullopt;
    p(j) = 0.5 * (*hi - *lo);
  }
  return p;
}

Polytope Polytope::intersect(const Polytope& other) const {
  if (other.dim() != dim()) throw DimensionError("intersecting polytopes of different dimension");
  Eigen::MatrixXd H(rows() + other.rows(), dim());
  H << H_, other.H_;
  Eigen::VectorXd h(rows() + other.rows());
  h << h_, other.h_;
  return Polytope(std::move(H), std::move(h));
}

Polytope Polytope::scaled(double factor) const { return Polytope(H_, h_ * factor); }

Polytope Polytope::normalized() const {
  std::vector<Eigen::Index> keep;
  Eigen::VectorXd norms = H_.rowwise().norm();
  for (Eigen::Index i = 0; i < H_.rows(); ++i)
    if (norms(i) > 0.0 || h_(i) < 0.0) keep.push_back(i);
  if (keep.empty()) return whole_space(dim());
  Eigen::MatrixXd H(keep.size(), dim());
  Eigen::VectorXd h(keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const auto i = keep[k];
    const double s = norms(i) > 0.0 ? norms(i) : 1.0;
    H.row(k) = H_.row(i) / s;
    h(k) = h_(i) / s;
  }
  return Polytope(std::move(H), std::move(h));
}

Polytope Polytope::without_redundant_rows(double tol) const {
  if (rows() == 1 || !is_feasible(0.0)) return *this;
  std::vector<bool> active(rows(), true);
  int remaining = rows();
  for (int i = 0; i < rows() && remaining > 1; ++i) {
    // Row i is redundant if maximizing H_i x over the other active rows,
    // with row i relaxed by one unit, stays within h_i.
    Eigen::MatrixXd A(remaining, dim());
    Eigen::VectorXd b(remaining);
    int k = 0;
    for (int j = 0; j < rows(); ++j) {
      if (!active[j]) continue;
      A.row(k) = H_.row(j);
      b(k) = j == i ? h_(j) + 1.0 : h_(j);
      ++k;
    }
    const lp::Result r = lp::maximize(A, b, H_.row(i).transpose());
    if (r.optimal() && r.value <= h_(i) + tol) {
      active[i] = false;
      --remaining;
    }
  }
  Eigen::MatrixXd H(remaining, dim());
  Eigen::VectorXd h(remaining);
  int k = 0;
  for (int j = 0; j < rows(); ++j) {
    if (!active[j]) continue;
    H.row(k) = H_.row(j);
    h(k) = h_(j);
    ++k;
  }
  return Polytope(std::move(H), std::move(h));
}

bool PolytopeUnion::contains(const Eigen::VectorXd& x, double tol) const {
  return std::any_of(parts.begin(), parts.end(),
                     [&](const Polytope& p) { return p.contains(x, tol); });
}

double PolytopeUnion::norm_bound() const {
  double r = 0.0;
  for (const auto& p : parts) r = std::max(r, p.norm_bound());
  return r;
}

}  // namespace swmpc
