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

#include "swmpc/set_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <string>

#include "swmpc/errors.hpp"
#include "swmpc/projection.hpp"

namespace swmpc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rows above which region-difference pieces are re-pruned.
int prune_threshold(int n) { return 4 * n + 8; }

void check_cap(std::size_t count, std::size_t cap, const char* what) {
  if (count > cap)
    throw ResourceError(std::string(what) + " exceeded the part cap of " + std::to_string(cap) +
                        " (" + std::to_string(count) + " parts)");
}

void require_bounded(const PolytopeUnion& omega) {
  for (const auto& p : omega.parts)
    if (!p.is_bounded()) throw std::invalid_argument("target set parts must be bounded");
}

// Key for collapsing numerically identical parts.
std::vector<long long> part_key(const Polytope& p) {
  std::vector<long long> key;
  key.reserve(p.rows() * (p.dim() + 1) + 1);
  key.push_back(p.rows());
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.dim(); ++j) key.push_back(std::llround(p.H()(i, j) * 1e10));
    key.push_back(std::llround(p.h()(i) * 1e10));
  }
  return key;
}

PolytopeUnion dedupe(std::vector<Polytope> parts) {
  std::map<std::vector<long long>, bool> seen;
  PolytopeUnion out;
  for (auto& p : parts)
    if (seen.emplace(part_key(p), true).second) out.parts.push_back(std::move(p));
  return out;
}

PolytopeUnion prepared_target(const PolytopeUnion& target) {
  PolytopeUnion out;
  for (const auto& p : target.parts) {
    if (!p.is_feasible()) continue;
    out.parts.push_back(p.normalized().without_redundant_rows());
  }
  return out;
}

PolytopeUnion controllable_impl(const SwitchedSystem& sys, const PolytopeUnion& target,
                                const GeometryOptions& opts, bool parallel) {
  require_nonsingular(sys);
  const PolytopeUnion base = prepared_target(target);
  const std::size_t parts = base.parts.size();
  const std::size_t jobs = parts * static_cast<std::size_t>(sys.q());
  check_cap(jobs, opts.part_cap, "controllable set");

  std::vector<std::optional<Polytope>> mapped(jobs);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16) if (parallel && jobs > 64)
  for (long long job = 0; job < static_cast<long long>(jobs); ++job) {
    try {
      const int signal = static_cast<int>(job / static_cast<long long>(parts));
      const std::size_t part = static_cast<std::size_t>(job) % parts;
      Polytope pre = preimage(sys.matrices()[signal], base.parts[part], signal).normalized();
      if (pre.is_feasible()) mapped[job] = std::move(pre);
    } catch (...) {
#pragma omp critical(swmpc_geometry_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Polytope> out;
  out.reserve(jobs);
  for (auto& m : mapped)
    if (m) out.push_back(std::move(*m));
  return dedupe(std::move(out));
}

void subtract(const Polytope& region, const Polytope& cut, double eps,
              std::vector<Polytope>& out) {
  if (region.intersect(cut).is_empty(eps)) {
    out.push_back(region);
    return;
  }
  Polytope current = region;
  for (int k = 0; k < cut.rows(); ++k) {
    const Eigen::VectorXd row = cut.H().row(k).transpose();
    const double rn = row.norm();
    if (rn == 0.0) continue;
    const auto s = current.support(row);
    if (s && *s <= cut.h()(k) + eps * rn) continue;
    Polytope outside(-row.transpose(), Eigen::VectorXd::Constant(1, -cut.h()(k)));
    Polytope piece = current.intersect(outside);
    if (!piece.is_empty(eps)) {
      if (piece.rows() > prune_threshold(piece.dim())) piece = piece.without_redundant_rows();
      out.push_back(std::move(piece));
    }
    current = current.intersect(Polytope(row.transpose(), Eigen::VectorXd::Constant(1, cut.h()(k))));
  }
}

std::vector<PolytopeUnion> preimages_by_signal(const SwitchedSystem& sys,
                                               const PolytopeUnion& omega) {
  const PolytopeUnion base = prepared_target(omega);
  std::vector<PolytopeUnion> out(sys.q());
  for (int i = 0; i < sys.q(); ++i)
    for (const auto& p : base.parts) out[i].parts.push_back(preimage(sys.matrices()[i], p, i));
  return out;
}

void require_interior_origin(const PolytopeUnion& omega) {
  if (omega.empty())
    throw std::invalid_argument("target set is empty; the origin must be an interior point");
  require_bounded(omega);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(omega.parts.front().dim());
  const bool interior = std::any_of(omega.parts.begin(), omega.parts.end(), [&](const Polytope& p) {
    return p.max_violation(zero) < -1e-12;
  });
  if (!interior) throw std::invalid_argument("the origin must lie in the interior of the target set");
}

bool union_included(const PolytopeUnion& sub, const PolytopeUnion& super,
                    const GeometryOptions& opts) {
  return std::all_of(sub.parts.begin(), sub.parts.end(), [&](const Polytope& p) {
    return inclusion_in_union(p, super, opts.eps, opts.part_cap);
  });
}

}  // namespace

GeometryOptions GeometryOptions::from_env() {
  GeometryOptions opts;
  if (const char* cap = std::getenv("SWMPC_PART_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(cap, &end, 10);
    if (end == cap || *end != '\0' || v == 0)
      throw std::invalid_argument(std::string("SWMPC_PART_CAP must be a positive integer, got '") +
                                  cap + "'");
    opts.part_cap = static_cast<std::size_t>(v);
  }
  return opts;
}

Polytope preimage(const Eigen::MatrixXd& A, const Polytope& P, int subsystem) {
  if (A.rows() != A.cols() || A.cols() != P.dim())
    throw DimensionError("preimage matrix does not match polytope dimension");
  const double det = A.determinant();
  const double scale = std::pow(std::max(1e-300, A.cwiseAbs().maxCoeff()), A.rows());
  if (!(std::abs(det) >= 1e-12 * scale)) throw SingularMatrixError(subsystem, det);
  return Polytope(P.H() * A, P.h());
}

void require_nonsingular(const SwitchedSystem& sys) {
  for (int i = 0; i < sys.q(); ++i) {
    const auto& A = sys.matrices()[i];
    const double det = A.determinant();
    const double scale = std::pow(std::max(1e-300, A.cwiseAbs().maxCoeff()), A.rows());
    if (!(std::abs(det) >= 1e-12 * scale)) throw SingularMatrixError(i, det);
  }
}

PolytopeUnion controllable_set(const SwitchedSystem& sys, const PolytopeUnion& target,
                               const GeometryOptions& opts) {
  return controllable_impl(sys, target, opts, true);
}

PolytopeUnion controllable_set_serial(const SwitchedSystem& sys, const PolytopeUnion& target,
                                      const GeometryOptions& opts) {
  return controllable_impl(sys, target, opts, false);
}

PolytopeUnion i_step_controllable(const SwitchedSystem& sys, const PolytopeUnion& target, int i,
                                  const GeometryOptions& opts) {
  if (i < 1) throw std::invalid_argument("step count must be at least 1");
  PolytopeUnion s = target;
  for (int k = 0; k < i; ++k) s = controllable_set(sys, s, opts);
  return s;
}

bool inclusion_in_union(const Polytope& P, const PolytopeUnion& U, double eps,
                        std::size_t part_cap) {
  if (eps < 0.0) throw std::invalid_argument("inclusion tolerance must be nonnegative");
  if (!P.is_bounded()) throw std::invalid_argument("inclusion test needs a bounded polytope");
  if (P.is_empty(eps)) return true;
  std::vector<Polytope> residual{P};
  for (const auto& part : U.parts) {
    std::vector<Polytope> next;
    for (const auto& r : residual) subtract(r, part, eps, next);
    residual = std::move(next);
    if (residual.empty()) return true;
    check_cap(residual.size(), part_cap, "region difference");
  }
  return residual.empty();
}

InvarianceReport is_switched_invariant(const SwitchedSystem& sys, const PolytopeUnion& omega,
                                       const GeometryOptions& opts) {
  require_nonsingular(sys);
  require_bounded(omega);
  InvarianceReport report;
  report.is_sis = true;
  if (omega.empty()) return report;

  const std::vector<PolytopeUnion> by_signal = preimages_by_signal(sys, omega);
  const PolytopeUnion S = controllable_set(sys, omega, opts);
  for (const auto& part : omega.parts) {
    std::vector<Signal> witnesses;
    if (const auto point = part.as_point()) {
      for (int i = 0; i < sys.q(); ++i)
        if (omega.contains(sys.matrices()[i] * *point, 1e-9)) witnesses.push_back(i);
      if (witnesses.empty()) report.is_sis = false;
    } else {
      for (int i = 0; i < sys.q(); ++i) {
        const bool meets = std::any_of(by_signal[i].parts.begin(), by_signal[i].parts.end(),
                                       [&](const Polytope& pre) {
                                         return !part.intersect(pre).is_empty(opts.eps);
                                       });
        if (meets) witnesses.push_back(i);
      }
      if (!inclusion_in_union(part, S, opts.eps, opts.part_cap)) report.is_sis = false;
    }
    report.witness_signals.push_back(std::move(witnesses));
  }
  return report;
}

std::optional<int> stabilizability_certificate(const SwitchedSystem& sys,
                                               const PolytopeUnion& omega, int kmax,
                                               const GeometryOptions& opts) {
  if (kmax < 0) throw std::invalid_argument("kmax must be nonnegative");
  require_interior_origin(omega);
  PolytopeUnion inflated;
  for (const auto& p : omega.parts) inflated.parts.push_back(p.scaled(1.0 + opts.interior_margin));

  PolytopeUnion current = omega;
  PolytopeUnion accumulated;
  for (int k = 0; k <= kmax; ++k) {
    current = controllable_set(sys, current, opts);
    for (const auto& p : current.parts) accumulated.parts.push_back(p);
    check_cap(accumulated.size(), opts.part_cap, "accumulated controllable sets");
    if (union_included(inflated, accumulated, opts)) return k;
  }
  return std::nullopt;
}

std::optional<int> non_stabilizability_certificate(const SwitchedSystem& sys,
                                                   const PolytopeUnion& omega, int kmax,
                                                   const GeometryOptions& opts) {
  if (kmax < 0) throw std::invalid_argument("kmax must be nonnegative");
  require_interior_origin(omega);
  PolytopeUnion current = omega;
  PolytopeUnion accumulated = omega;
  for (int k = 0; k <= kmax; ++k) {
    current = controllable_set(sys, current, opts);
    if (union_included(current, accumulated, opts)) return k;
    for (const auto& p : current.parts) accumulated.parts.push_back(p);
    check_cap(accumulated.size(), opts.part_cap, "accumulated controllable sets");
  }
  return std::nullopt;
}

double distance_to_set(const PolytopeUnion& omega, const Eigen::VectorXd& x) {
  if (omega.empty()) throw std::invalid_argument("distance to an empty set is undefined");
  double best = kInf;
  for (const auto& p : omega.parts) {
    best = std::min(best, distance(p, x));
    if (best == 0.0) break;
  }
  return best;
}

}  // namespace swmpc
