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

// swmpc: command-line harness for the switching MPC library.
//
//   swmpc simulate --scenario viral-2 --strategy swmpc -N 5 --out run/
//   swmpc compare --scenario viral-1 --out cmp/
//   swmpc analyze --scenario illustrative --box 0.5 --kmax 6 --out sets/
//   swmpc export-scenario --scenario cancer --out cancer.json

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swmpc/controller.hpp"
#include "swmpc/errors.hpp"
#include "swmpc/scenario_io.hpp"
#include "swmpc/scenarios.hpp"
#include "swmpc/set_geometry.hpp"
#include "swmpc/strategies.hpp"

namespace fs = std::filesystem;
using namespace swmpc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitResource = 3;

struct Options {
  std::string scenario = "viral-1";
  std::string strategy = "swmpc";
  std::optional<int> horizon;
  std::optional<int> steps;
  std::string out = ".";
  int kmax = 5;
  bool no_waiting = false;
  bool no_terminal = false;
  std::optional<int> cancer_case;
  std::string cycle;
  int period = 3;
  std::optional<double> box;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Scenario resolve_scenario(const Options& o) {
  Scenario s = [&] {
    if (o.cancer_case) {
      if (o.scenario != "cancer")
        throw std::invalid_argument("--case applies to the cancer scenario only");
      return cancer_case(*o.cancer_case);
    }
    const auto names = builtin_scenario_names();
    if (std::find(names.begin(), names.end(), o.scenario) != names.end())
      return builtin_scenario(o.scenario);
    if (!fs::exists(o.scenario))
      throw std::invalid_argument("'" + o.scenario + "' is neither a built-in scenario nor a file");
    return load_scenario_file(o.scenario);
  }();
  if (o.horizon) {
    if (*o.horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    s.prediction_horizon = *o.horizon;
  }
  if (o.steps) {
    if (*o.steps < 0) throw std::invalid_argument("steps must be nonnegative");
    s.horizon_steps = *o.steps;
  }
  if (o.no_waiting) s.enforce_waiting = false;
  if (o.no_terminal) s.enforce_terminal = false;
  return s;
}

// "1:4,3:2,2:2" with 1-based signals.
CyclicSchedule parse_cycle(const std::string& spec, int q) {
  CyclicSchedule c;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("cycle block '" + item + "' is not signal:count");
    try {
      c.blocks.emplace_back(std::stoi(item.substr(0, colon)) - 1, std::stoi(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("cycle block '" + item + "' is not signal:count");
    }
  }
  c.validate(q);
  return c;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  return f;
}

// step, time, x1..xn, V_total, signal (1-based), J0, cumulative index
void write_trajectory(const fs::path& path, const Scenario& s, const std::vector<Eigen::VectorXd>& states,
                      const SwitchingPath& signals, const std::vector<double>& costs) {
  auto f = open_out(path);
  f << "step,time_" << s.time_unit();
  for (int i = 0; i < s.system.n(); ++i) f << ",x" << i + 1;
  f << ",V_total,signal,J0,index\n";
  double index = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const double total = total_load(states[k]);
    index += total;
    f << k << ',' << num(s.time_at(static_cast<int>(k)));
    for (Eigen::Index i = 0; i < states[k].size(); ++i) f << ',' << num(states[k][i]);
    f << ',' << num(total) << ',';
    if (k < signals.size()) f << signals[k] + 1;
    f << ',';
    if (k < costs.size()) f << num(costs[k]);
    f << ',' << num(index) << '\n';
  }
}

void write_schedule(const fs::path& path, const Scenario& s, const SwitchingPath& signals) {
  auto f = open_out(path);
  f << "pack,start,length,signal,label\n";
  const auto packs = pack_decomposition(signals);
  for (std::size_t i = 0; i < packs.size(); ++i) {
    const auto& p = packs[i];
    f << i << ',' << p.start << ',' << p.length << ',' << p.signal + 1 << ',';
    if (p.signal < static_cast<int>(s.labels.size())) f << s.labels[p.signal];
    f << '\n';
  }
}

struct Run {
  std::vector<Eigen::VectorXd> states;
  SwitchingPath signals;
  std::vector<double> costs;
};

Run run_strategy(const Scenario& s, const std::string& strategy, const Options& o) {
  const int T = s.horizon_steps;
  auto from = [](StrategyResult r) { return Run{std::move(r.states), std::move(r.path), {}}; };
  if (strategy == "swmpc") {
    auto rec = run_closed_loop(s.problem(), s.x0, T);
    return Run{std::move(rec.states), std::move(rec.signals), std::move(rec.costs)};
  }
  if (strategy == "vf") return from(virologic_failure_strategy(s.system, s.x0, T));
  if (strategy == "swatch") return from(swatch_strategy(s.system, s.x0, T, o.period));
  if (strategy == "optimal") return from(brute_force_optimal(s.system, s.x0, T));
  if (strategy == "cycle") {
    if (o.cycle.empty()) throw std::invalid_argument("--strategy cycle needs --cycle");
    return from(run_cycle(s.system, s.x0, parse_cycle(o.cycle, s.system.q()), T));
  }
  throw std::invalid_argument("unknown strategy '" + strategy + "'");
}

int cmd_simulate(const Options& o) {
  const Scenario s = resolve_scenario(o);
  const Run r = run_strategy(s, o.strategy, o);
  const fs::path out(o.out);
  write_trajectory(out / "trajectory.csv", s, r.states, r.signals, r.costs);
  write_schedule(out / "schedule.csv", s, r.signals);
  std::cout << s.name << ' ' << o.strategy << ": I_T = " << num(performance_index(r.states))
            << ", final total = " << num(total_load(r.states.back())) << '\n';
  return kExitOk;
}

int cmd_compare(const Options& o) {
  const Scenario s = resolve_scenario(o);
  const fs::path out(o.out);
  auto index_file = open_out(out / "index.csv");
  index_file << "strategy,I_T,status\n";
  const std::pair<const char*, const char*> rows[] = {
      {"SWATCH", "swatch"}, {"VF", "vf"}, {"OPTIMAL", "optimal"}, {"SwMPC", "swmpc"}};
  for (const auto& [label, strategy] : rows) {
    std::string status = "ok";
    std::string value;
    try {
      const Run r = run_strategy(s, strategy, o);
      write_trajectory(out / ("trajectory_" + std::string(strategy) + ".csv"), s, r.states,
                       r.signals, r.costs);
      value = num(performance_index(r.states));
    } catch (const InfeasibleError& e) {
      status = std::string("infeasible (") + to_string(e.kind()) + ")" +
               (e.step() ? " at step " + std::to_string(*e.step()) : "");
    } catch (const std::exception& e) {
      status = std::string("error: ") + e.what();
    }
    for (char& c : status)
      if (c == ',' || c == '\n') c = ';';
    index_file << label << ',' << value << ',' << status << '\n';
    std::cout << label << '\t' << (value.empty() ? "-" : value) << '\t' << status << '\n';
  }
  return kExitOk;
}

int cmd_analyze(const Options& o) {
  Scenario s = resolve_scenario(o);
  if (o.box) {
    if (!(*o.box > 0.0)) throw std::invalid_argument("--box radius must be positive");
    s.target = PolytopeUnion(Polytope::box(s.system.n(), *o.box));
  }
  if (o.kmax < 0) throw std::invalid_argument("--kmax must be nonnegative");
  for (const auto& part : s.target.parts)
    if (!part.is_bounded()) throw std::invalid_argument("analysis needs a bounded target set");
  require_nonsingular(s.system);

  const GeometryOptions opts = GeometryOptions::from_env();
  const InvarianceReport sis = is_switched_invariant(s.system, s.target, opts);
  const auto stab = stabilizability_certificate(s.system, s.target, o.kmax, opts);
  const auto nonstab = non_stabilizability_certificate(s.system, s.target, o.kmax, opts);

  nlohmann::json sets{{"target", union_to_json(s.target)}, {"S", nlohmann::json::array()}};
  PolytopeUnion current = s.target;
  for (int i = 1; i <= o.kmax + 1; ++i) {
    current = controllable_set(s.system, current, opts);
    sets["S"].push_back(union_to_json(current));
  }
  const fs::path out(o.out);
  open_out(out / "sets.json") << sets.dump(1) << '\n';

  std::ostringstream cert;
  cert << "scenario: " << s.name << '\n';
  cert << "sis: " << (sis.is_sis ? "true" : "false") << '\n';
  if (stab)
    cert << "stabilizable at k=" << *stab << '\n';
  else if (nonstab)
    cert << "non-stabilizable at k=" << *nonstab << '\n';
  else
    cert << "undecided within kmax=" << o.kmax << '\n';
  open_out(out / "certificate.txt") << cert.str();
  std::cout << cert.str();
  return kExitOk;
}

int cmd_export(const Options& o) {
  const Scenario s = resolve_scenario(o);
  const std::string doc = scenario_to_json(s).dump(2) + "\n";
  if (o.out == "-" || o.out == ".") {
    std::cout << doc;
  } else {
    open_out(o.out) << doc;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-based switching MPC for switched linear systems"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", o.scenario,
                    "Built-in scenario (viral-1, viral-2, cancer, cancer-case-{1,2,3}, "
                    "illustrative) or scenario JSON file")
        ->capture_default_str();
    cmd->add_option("-N,--horizon", o.horizon, "Prediction horizon");
    cmd->add_option("--steps", o.steps, "Number of closed-loop decision steps");
    cmd->add_option("--out", o.out, "Output directory (file for export-scenario)")
        ->capture_default_str();
    cmd->add_flag("--no-waiting", o.no_waiting, "Disable waiting-time constraints");
    cmd->add_flag("--no-terminal", o.no_terminal, "Disable the terminal constraint");
    cmd->add_option("--case", o.cancer_case, "Cancer consecutive-use weight preset")
        ->check(CLI::Range(1, 3));
  };

  auto* simulate = app.add_subcommand(
      "simulate",
      "Run one strategy. Writes trajectory.csv (step, time, x1..xn, V_total, signal [1-based], "
      "J0 [SwMPC only], cumulative index) and schedule.csv (pack, start, length, signal, label). "
      "Time is in days, or hours for cancer scenarios.");
  add_common(simulate);
  simulate->add_option("--strategy", o.strategy, "swmpc | vf | swatch | optimal | cycle")
      ->check(CLI::IsMember({"swmpc", "vf", "swatch", "optimal", "cycle"}))
      ->capture_default_str();
  simulate->add_option("--cycle", o.cycle, "Cyclic schedule as signal:count,... (1-based)");
  simulate->add_option("--period", o.period, "Alternation period for swatch")->capture_default_str();

  auto* compare = app.add_subcommand(
      "compare",
      "Run SWATCH, VF, OPTIMAL and SwMPC. Writes index.csv (strategy, I_T, status) and "
      "trajectory_<strategy>.csv per strategy.");
  add_common(compare);
  compare->add_option("--period", o.period, "Alternation period for swatch")->capture_default_str();

  auto* analyze = app.add_subcommand(
      "analyze",
      "Invariance and stabilizability analysis of the target set. Writes sets.json "
      "(S_1..S_{kmax+1}) and certificate.txt.");
  add_common(analyze);
  analyze->add_option("--kmax", o.kmax, "Largest certificate depth")->capture_default_str();
  analyze->add_option("--box", o.box, "Use the box [-R, R]^n as target set");

  auto* export_cmd = app.add_subcommand("export-scenario", "Write a scenario as JSON");
  add_common(export_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(o);
    if (*compare) return cmd_compare(o);
    if (*analyze) return cmd_analyze(o);
    if (*export_cmd) return cmd_export(o);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible (" << to_string(e.kind()) << ")";
    if (e.step()) std::cerr << " at step " << *e.step();
    std::cerr << '\n';
    return kExitInfeasible;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
