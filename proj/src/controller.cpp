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

#include "swmpc/controller.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "swmpc/set_geometry.hpp"

namespace swmpc {

namespace {

constexpr double kMemberTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Pack currently open at the end of memory ++ prefix.
struct PackState {
  Signal current = -1;
  int length = 0;     // memory elements included
  int predicted = 0;  // prediction positions only
};

// Signals of the last q-1 packs of `seq`, checked against a new pack signal.
bool cycle_conflict(const std::vector<Signal>& seq, Signal s, int q) {
  int seen = 0;
  auto i = static_cast<long>(seq.size()) - 1;
  while (i >= 0 && seen < q - 1) {
    const Signal sig = seq[i];
    if (sig == s) return true;
    while (i >= 0 && seq[i] == sig) --i;
    ++seen;
  }
  return false;
}

// Everything the search needs, precomputed once per solve.
struct Context {
  const OcpProblem* p = nullptr;
  int N = 0, q = 0, m = 0;
  bool waiting = false, cycle = false, terminal = false;
  std::vector<double> cons;  // b_sigma
  bool cons_memory = true;
  double c_min = 0.0;
  std::vector<double> s_pow;  // s_min^t, t = 0..N
  double radius = kInf;       // norm bound of the target
  double radius_tol = kInf;   // norm bound of the target inflated by the membership tolerance
  PackState initial;

  // Appends s to the open pack state; false when waiting or cycle rules forbid it.
  // `closed` accumulates the consecutive-use cost of packs closed by s.
  bool advance(const std::vector<Signal>& seq, PackState& st, Signal s, double& closed) const {
    const auto& w = p->system.waiting();
    if (s == st.current) {
      if (waiting && st.length + 1 > w[s].upper) return false;
      ++st.length;
      ++st.predicted;
      return true;
    }
    if (st.current >= 0) {
      if (waiting && st.length < w[st.current].lower) return false;
      if (cycle && cycle_conflict(seq, s, q)) return false;
      closed += open_cost(st);
    }
    if (waiting && w[s].upper < 1) return false;
    st = PackState{s, 1, 1};
    return true;
  }

  double open_cost(const PackState& st) const {
    if (st.current < 0 || st.predicted == 0) return 0.0;
    const double len = cons_memory ? st.length : st.predicted;
    return cons[st.current] * len * len * st.predicted;
  }

  // Lower bound on stage terms j = d..N-1 plus the terminal term, given ||x(d)||.
  double future_bound(double norm, int d) const {
    if (!std::isfinite(radius)) return 0.0;
    double lb = 0.0;
    for (int t = 0; t < N - d; ++t) lb += c_min * std::max(0.0, s_pow[t] * norm - radius);
    lb += p->cost.terminal * std::max(0.0, s_pow[N - d] * norm - radius);
    return lb;
  }

  // x(d) with this norm cannot reach the target by step N.
  bool terminal_unreachable(double norm, int d) const {
    return terminal && s_pow[N - d] * norm > radius_tol * (1.0 + 1e-12);
  }
};

Context make_context(const OcpProblem& p) {
  Context c;
  c.p = &p;
  c.N = p.horizon;
  c.q = p.system.q();
  c.m = static_cast<int>(p.memory.size());
  c.waiting = p.enforce_waiting;
  c.cycle = p.enforce_cycle;
  c.terminal = p.enforce_terminal;
  c.cons.assign(c.q, 0.0);
  for (Signal s = 0; s < c.q; ++s) c.cons[s] = p.cost.consecutive_weight(s);
  c.cons_memory = p.cost.consecutive_includes_memory;
  c.c_min = *std::min_element(p.cost.stage.begin(), p.cost.stage.end());

  double s_min = kInf;
  for (const auto& A : p.system.matrices()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    s_min = std::min(s_min, svd.singularValues().minCoeff());
  }
  c.s_pow.assign(c.N + 1, 1.0);
  for (int t = 1; t <= c.N; ++t) c.s_pow[t] = c.s_pow[t - 1] * s_min;

  c.radius = p.target.norm_bound();
  std::vector<Polytope> inflated;
  for (const auto& part : p.target.parts)
    inflated.emplace_back(part.H(), (part.h().array() + kMemberTol).matrix());
  c.radius_tol = PolytopeUnion(inflated).norm_bound();

  for (const Signal s : p.memory) {
    if (s == c.initial.current) {
      ++c.initial.length;
    } else {
      c.initial = PackState{s, 1, 0};
    }
  }
  return c;
}

// Incumbent shared by all subtrees: the best cost found so far.
class SharedBound {
 public:
  explicit SharedBound(double v) : value_(v) {}
  double get() const { return value_.load(std::memory_order_relaxed); }
  void offer(double v) {
    double cur = value_.load(std::memory_order_relaxed);
    while (v < cur && !value_.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
  }

 private:
  std::atomic<double> value_;
};

struct Node {
  int depth = 0;
  Eigen::VectorXd y;  // x(depth)
  double stage = 0.0;
  double closed = 0.0;
  PackState pack;
};

struct Best {
  double cost = kInf;
  SwitchingPath path;

  void offer(double c, const SwitchingPath& p) {
    if (c < cost || (c == cost && (path.empty() || p < path))) {
      cost = c;
      path = p;
    }
  }
};

bool prunes(double lb, double incumbent) {
  return lb > incumbent + 1e-12 * std::abs(incumbent);
}

class Search {
 public:
  Search(const Context& ctx, SharedBound* shared, bool best_first)
      : ctx_(ctx), shared_(shared), best_first_(best_first) {}

  // Explores the subtree below `node`; `seq` holds memory ++ prefix.
  void run(const Node& node, std::vector<Signal>& seq) {
    const OcpProblem& p = *ctx_.p;
    ++stats.nodes_explored;
    if (!p.system.state_set().contains(node.y, kMemberTol)) {
      ++stats.nodes_pruned;
      return;
    }
    const double dist = distance_to_set(p.target, node.y);
    const int d = node.depth;

    struct Child {
      Signal s;
      Eigen::VectorXd y;
      double key;
    };
    std::vector<Child> children;
    children.reserve(ctx_.q);
    for (Signal s = 0; s < ctx_.q; ++s) {
      Eigen::VectorXd y = p.system.matrices()[s] * node.y;
      const double key = p.cost.stage[s] * dist + ctx_.future_bound(y.norm(), d + 1);
      children.push_back({s, std::move(y), key});
    }
    if (best_first_)
      std::stable_sort(children.begin(), children.end(),
                       [](const Child& a, const Child& b) { return a.key < b.key; });

    for (auto& ch : children) {
      Node next;
      next.depth = d + 1;
      next.pack = node.pack;
      next.closed = node.closed;
      if (!ctx_.advance(seq, next.pack, ch.s, next.closed)) {
        ++stats.nodes_pruned;
        continue;
      }
      next.stage = node.stage + p.cost.stage[ch.s] * dist;
      seq.push_back(ch.s);
      if (next.depth == ctx_.N) {
        leaf(ch.y, next.stage, seq);
      } else {
        const double norm = ch.y.norm();
        const double rest =
            next.closed + ctx_.open_cost(next.pack) + ctx_.future_bound(norm, next.depth);
        const double lb = next.stage + rest * (1.0 - 1e-12);
        if (ctx_.terminal_unreachable(norm, next.depth) || prunes(lb, incumbent())) {
          ++stats.nodes_pruned;
        } else {
          next.y = std::move(ch.y);
          run(next, seq);
        }
      }
      seq.pop_back();
    }
  }

  double incumbent() const {
    return shared_ ? std::min(shared_->get(), best.cost) : best.cost;
  }

  Best best;
  SearchStats stats;

 private:
  void leaf(const Eigen::VectorXd& y, double stage, const std::vector<Signal>& seq) {
    const OcpProblem& p = *ctx_.p;
    ++stats.leaves;
    if (ctx_.terminal && !p.target.contains(y, kMemberTol)) return;
    const SwitchingPath path(seq.begin() + ctx_.m, seq.end());
    double cost = stage;
    cost += p.cost.terminal * distance_to_set(p.target, y);
    cost += consecutive_cost(p.cost, p.memory, path);
    best.offer(cost, path);
    if (shared_) shared_->offer(cost);
  }

  const Context& ctx_;
  SharedBound* shared_;
  bool best_first_;
};

Node root_node(const Context& ctx) {
  Node root;
  root.y = ctx.p->x;
  root.pack = ctx.initial;
  return root;
}

// Is any sequence admissible under the given rule set? Plain DFS without costs.
bool any_admissible(const Context& ctx, const Eigen::VectorXd& y, int d, PackState pack,
                    std::vector<Signal>& seq) {
  const OcpProblem& p = *ctx.p;
  if (d == ctx.N) return !ctx.terminal || p.target.contains(y, kMemberTol);
  if (!p.system.state_set().contains(y, kMemberTol)) return false;
  if (ctx.terminal_unreachable(y.norm(), d)) return false;
  for (Signal s = 0; s < ctx.q; ++s) {
    PackState next = pack;
    double unused = 0.0;
    if (!ctx.advance(seq, next, s, unused)) continue;
    seq.push_back(s);
    const bool ok = any_admissible(ctx, p.system.matrices()[s] * y, d + 1, next, seq);
    seq.pop_back();
    if (ok) return true;
  }
  return false;
}

[[noreturn]] void throw_infeasible(const OcpProblem& problem) {
  OcpProblem relaxed = problem;
  relaxed.enforce_terminal = false;
  auto feasible = [](const OcpProblem& pr) {
    const Context ctx = make_context(pr);
    std::vector<Signal> seq = pr.memory;
    return any_admissible(ctx, pr.x, 0, ctx.initial, seq);
  };
  if (problem.enforce_terminal && feasible(relaxed)) throw InfeasibleError(InfeasibilityKind::kTerminal);
  relaxed.enforce_waiting = false;
  relaxed.enforce_cycle = false;
  if ((problem.enforce_waiting || problem.enforce_cycle) && feasible(relaxed))
    throw InfeasibleError(InfeasibilityKind::kWaiting);
  throw InfeasibleError(InfeasibilityKind::kState);
}

OcpSolution finish(const OcpProblem& problem, Best best, const SearchStats& stats) {
  if (best.path.empty()) throw_infeasible(problem);
  OcpSolution sol;
  auto ev = eval_cost(problem, best.path);
  sol.path = std::move(best.path);
  sol.trajectory = std::move(ev.trajectory);
  sol.cost = best.cost;
  sol.stats = stats;
  return sol;
}

void add_stats(SearchStats& into, const SearchStats& s) {
  into.nodes_explored += s.nodes_explored;
  into.nodes_pruned += s.nodes_pruned;
  into.leaves += s.leaves;
}

// Greedy dive: follow the best-keyed admissible child down to a leaf.
double greedy_dive(const Context& ctx) {
  const OcpProblem& p = *ctx.p;
  Node node = root_node(ctx);
  std::vector<Signal> seq = p.memory;
  while (node.depth < ctx.N) {
    if (!p.system.state_set().contains(node.y, kMemberTol)) return kInf;
    const double dist = distance_to_set(p.target, node.y);
    double best_key = kInf;
    Node best_next;
    Signal best_s = -1;
    for (Signal s = 0; s < ctx.q; ++s) {
      Node next;
      next.pack = node.pack;
      next.closed = node.closed;
      if (!ctx.advance(seq, next.pack, s, next.closed)) continue;
      next.depth = node.depth + 1;
      next.y = p.system.matrices()[s] * node.y;
      next.stage = node.stage + p.cost.stage[s] * dist;
      const double norm = next.y.norm();
      if (ctx.terminal_unreachable(norm, next.depth)) continue;
      const double key = p.cost.stage[s] * dist + ctx.future_bound(norm, next.depth);
      if (key < best_key) {
        best_key = key;
        best_next = std::move(next);
        best_s = s;
      }
    }
    if (best_s < 0) return kInf;
    seq.push_back(best_s);
    node = std::move(best_next);
  }
  if (ctx.terminal && !p.target.contains(node.y, kMemberTol)) return kInf;
  const SwitchingPath path(seq.begin() + ctx.m, seq.end());
  return node.stage + p.cost.terminal * distance_to_set(p.target, node.y) +
         consecutive_cost(p.cost, p.memory, path);
}

struct Task {
  Node node;
  std::vector<Signal> seq;
};

// Admissible prefixes of length `depth` in lexicographic order.
std::vector<Task> expand_prefixes(const Context& ctx, int depth, SearchStats& stats) {
  const OcpProblem& p = *ctx.p;
  std::vector<Task> frontier{{root_node(ctx), p.memory}};
  for (int d = 0; d < depth; ++d) {
    std::vector<Task> next_frontier;
    for (auto& t : frontier) {
      ++stats.nodes_explored;
      if (!p.system.state_set().contains(t.node.y, kMemberTol)) {
        ++stats.nodes_pruned;
        continue;
      }
      const double dist = distance_to_set(p.target, t.node.y);
      for (Signal s = 0; s < ctx.q; ++s) {
        Task child;
        child.node.pack = t.node.pack;
        child.node.closed = t.node.closed;
        if (!ctx.advance(t.seq, child.node.pack, s, child.node.closed)) {
          ++stats.nodes_pruned;
          continue;
        }
        child.node.depth = d + 1;
        child.node.y = p.system.matrices()[s] * t.node.y;
        child.node.stage = t.node.stage + p.cost.stage[s] * dist;
        if (ctx.terminal_unreachable(child.node.y.norm(), d + 1)) {
          ++stats.nodes_pruned;
          continue;
        }
        child.seq = t.seq;
        child.seq.push_back(s);
        next_frontier.push_back(std::move(child));
      }
    }
    frontier = std::move(next_frontier);
  }
  return frontier;
}

}  // namespace

CostSpec CostSpec::uniform(int q, double stage, double terminal) {
  CostSpec c;
  c.stage.assign(q, stage);
  c.terminal = terminal;
  return c;
}

void CostSpec::validate(int q) const {
  if (static_cast<int>(stage.size()) != q)
    throw std::invalid_argument("need one stage weight per subsystem");
  for (double c : stage)
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("stage weights must be positive");
  if (!(terminal > 0.0) || !std::isfinite(terminal))
    throw std::invalid_argument("terminal weight must be positive");
  if (!consecutive.empty()) {
    if (static_cast<int>(consecutive.size()) != q)
      throw std::invalid_argument("need one consecutive-use weight per subsystem");
    for (double b : consecutive)
      if (!(b >= 0.0) || !std::isfinite(b))
        throw std::invalid_argument("consecutive-use weights must be nonnegative");
  }
}

void OcpProblem::validate() const {
  system.check_state(x);
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (target.empty()) throw std::invalid_argument("target set is empty");
  for (const auto& part : target.parts)
    if (part.dim() != system.n()) throw DimensionError("target dimension does not match the system");
  cost.validate(system.q());
  if (static_cast<int>(memory.size()) > system.max_upper())
    throw std::invalid_argument("memory path is longer than the largest upper waiting bound");
  for (const Signal s : memory) system.check_signal(s);
}

double consecutive_cost(const CostSpec& cost, const SwitchingPath& memory,
                        const SwitchingPath& path) {
  if (cost.consecutive.empty() || path.empty()) return 0.0;
  const SwitchingPath full = cost.consecutive_includes_memory ? [&] {
    SwitchingPath f = memory;
    f.insert(f.end(), path.begin(), path.end());
    return f;
  }() : path;
  const int offset = static_cast<int>(full.size() - path.size());
  double total = 0.0;
  for (const auto& pack : pack_decomposition(full)) {
    const int first = std::max(pack.start, offset);
    const int count = pack.start + pack.length - first;
    if (count <= 0) continue;
    const double len = pack.length;
    total += cost.consecutive[pack.signal] * len * len * count;
  }
  return total;
}

CostEvaluation eval_cost(const OcpProblem& problem, const SwitchingPath& path) {
  if (static_cast<int>(path.size()) != problem.horizon)
    throw std::invalid_argument("path length " + std::to_string(path.size()) +
                                " does not match horizon " + std::to_string(problem.horizon));
  CostEvaluation ev;
  ev.trajectory = simulate(problem.system, problem.x, path).states;
  double stage = 0.0;
  for (std::size_t j = 0; j < path.size(); ++j)
    stage = stage + problem.cost.stage[path[j]] * distance_to_set(problem.target, ev.trajectory[j]);
  ev.cost = stage;
  ev.cost += problem.cost.terminal * distance_to_set(problem.target, ev.trajectory.back());
  ev.cost += consecutive_cost(problem.cost, problem.memory, path);
  return ev;
}

std::optional<InfeasibilityKind> check_admissible(const OcpProblem& problem,
                                                  const SwitchingPath& path) {
  const auto& sys = problem.system;
  if (static_cast<int>(path.size()) != problem.horizon)
    throw std::invalid_argument("path length does not match horizon");
  for (const Signal s : path) sys.check_signal(s);

  const auto traj = simulate(sys, problem.x, path).states;
  for (int j = 0; j < problem.horizon; ++j)
    if (!sys.state_set().contains(traj[j], kMemberTol)) return InfeasibilityKind::kState;

  SwitchingPath full = problem.memory;
  full.insert(full.end(), path.begin(), path.end());
  const int m = static_cast<int>(problem.memory.size());
  const int total = static_cast<int>(full.size());
  const auto packs = pack_decomposition(full);
  if (problem.enforce_waiting) {
    for (const auto& pk : packs) {
      const int end = pk.start + pk.length;  // one past the last index
      const auto& w = sys.waiting()[pk.signal];
      const bool touches = end > m;
      const bool closed_at_seam = end == m && !path.empty();
      if (touches && pk.length > w.upper) return InfeasibilityKind::kWaiting;
      if ((touches || closed_at_seam) && end < total && pk.length < w.lower)
        return InfeasibilityKind::kWaiting;
    }
  }
  if (problem.enforce_cycle) {
    for (std::size_t k = 0; k < packs.size(); ++k) {
      if (packs[k].start < m) continue;
      for (std::size_t back = 1; back < static_cast<std::size_t>(sys.q()) && back <= k; ++back)
        if (packs[k - back].signal == packs[k].signal) return InfeasibilityKind::kWaiting;
    }
  }
  if (problem.enforce_terminal && !problem.target.contains(traj.back(), kMemberTol))
    return InfeasibilityKind::kTerminal;
  return std::nullopt;
}

OcpSolution solve_ocp_serial(const OcpProblem& problem) {
  problem.validate();
  const Context ctx = make_context(problem);
  Search search(ctx, nullptr, false);
  std::vector<Signal> seq = problem.memory;
  search.run(root_node(ctx), seq);
  return finish(problem, std::move(search.best), search.stats);
}

OcpSolution solve_ocp(const OcpProblem& problem) {
  problem.validate();
  const Context ctx = make_context(problem);

  // Split depth: enough subtrees to keep every thread busy.
  const int threads = omp_get_max_threads();
  int depth = 0;
  double count = 1.0;
  while (depth < ctx.N - 1 && count * ctx.q <= 64.0 * threads) {
    count *= ctx.q;
    ++depth;
  }

  SearchStats stats;
  SharedBound shared(greedy_dive(ctx));
  std::vector<Task> tasks = expand_prefixes(ctx, depth, stats);
  const auto ntasks = static_cast<long>(tasks.size());
  std::vector<Best> bests(tasks.size());
  std::vector<SearchStats> task_stats(tasks.size());
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1)
  for (long t = 0; t < ntasks; ++t) {
    try {
      Search search(ctx, &shared, true);
      search.run(tasks[t].node, tasks[t].seq);
      bests[t] = std::move(search.best);
      task_stats[t] = search.stats;
    } catch (...) {
#pragma omp critical(swmpc_ocp_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  // Deterministic reduction by (cost, lexicographic path).
  Best best;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    add_stats(stats, task_stats[t]);
    if (!bests[t].path.empty()) best.offer(bests[t].cost, bests[t].path);
  }
  return finish(problem, std::move(best), stats);
}

RhcStep rhc_step(const ControllerState& state, const OcpProblem& problem_template) {
  OcpProblem problem = problem_template;
  problem.x = state.x;
  problem.memory = state.memory;
  RhcStep out;
  out.solution = solve_ocp(problem);
  out.applied = out.solution.path.front();
  out.next.x = step(problem.system, state.x, out.applied);
  out.next.memory = state.memory;
  out.next.memory.push_back(out.applied);
  const auto keep = static_cast<std::size_t>(problem.system.max_upper());
  if (out.next.memory.size() > keep)
    out.next.memory.erase(out.next.memory.begin(),
                          out.next.memory.end() - static_cast<long>(keep));
  out.next.k = state.k + 1;
  return out;
}

ClosedLoopRecord run_closed_loop(const OcpProblem& problem_template, const Eigen::VectorXd& x0,
                                 int steps) {
  if (steps < 0) throw std::invalid_argument("number of steps must be nonnegative");
  ClosedLoopRecord rec;
  ControllerState state{x0, {}, 0};
  rec.states.push_back(x0);
  for (int k = 0; k < steps; ++k) {
    RhcStep st;
    try {
      st = rhc_step(state, problem_template);
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(e.kind(), k);
    }
    rec.signals.push_back(st.applied);
    rec.costs.push_back(st.solution.cost);
    rec.stats.push_back(st.solution.stats);
    state = std::move(st.next);
    rec.states.push_back(state.x);
  }
  return rec;
}

}  // namespace swmpc
