// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The sixdma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: sweeps from plan files, single solves, traces and
// scenario dumps. Failures print {"error": {...}} on stderr and exit nonzero.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sixdma/experiment.hpp"
#include "sixdma/kernels/kernels.hpp"
#include "sixdma/serialize.hpp"
#include "sixdma/solver.hpp"

namespace {

using namespace sixdma;

struct SingleRun {
  std::string scheme = "6dma";
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::string replay;
  std::string output;
  std::vector<std::string> settings;
};

void add_single_options(CLI::App* cmd, SingleRun& opt, bool with_scheme) {
  if (with_scheme) cmd->add_option("--scheme", opt.scheme, "6dma|6dma-position|6dma-orientation|fa|es|offline-6dma");
  cmd->add_option("--seed", opt.seed, "Scenario seed");
  cmd->add_option("--stream", opt.stream, "Channel realization index");
  cmd->add_option("--replay", opt.replay, "Scenario + paths JSON written by the 'scenario' command");
  cmd->add_option("--output,-o", opt.output, "Write to this file instead of stdout");
  cmd->add_option("--set", opt.settings, "Plan key override key=value (m, k, l, mode, power_dbm, ...)");
}

void apply_overrides(ExperimentPlan& plan, const std::vector<std::string>& settings) {
  for (const auto& s : settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + s + "'");
    apply_setting(plan, s.substr(0, eq), s.substr(eq + 1));
  }
}

struct Prepared {
  Scenario scenario;
  PathTable table;
  SolverConfig solver;
};

Prepared prepare(const SingleRun& opt) {
  ExperimentPlan plan;
  apply_overrides(plan, opt.settings);
  Prepared p;
  if (!opt.replay.empty()) {
    auto [scenario, table] = replay_from_json(Json::parse(read_file(opt.replay)));
    p.scenario = std::move(scenario);
    p.table = std::move(table);
  } else {
    ScenarioConfig sc = plan.scenario;
    sc.seed = opt.seed;
    p.scenario = generate_scenario(sc);
    p.table = sample_path_table(p.scenario, opt.stream);
  }
  p.solver = plan.solver;
  p.solver.validate();
  return p;
}

void deliver(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  write_file(resolve_output_path(output), text);
}

Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"type", kind}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"6D movable-antenna uplink WSR optimization"};
  app.require_subcommand(1);

  std::string plan_file;
  std::vector<std::string> run_settings;
  std::string run_output, run_format;
  int run_jobs = 0;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Execute a sweep plan and write the results table");
  run->add_option("plan", plan_file, "Plan file (key = value lines)")->required()->check(CLI::ExistingFile);
  run->add_option("--set", run_settings, "Override a plan key: key=value");
  run->add_option("--output,-o", run_output, "Output path (overrides the plan's 'output')");
  run->add_option("--format", run_format, "csv|json (overrides the plan's 'format')");
  run->add_option("--jobs,-j", run_jobs, "Parallel runs");
  run->add_flag("--quiet,-q", quiet, "No per-run progress on stderr");

  SingleRun solve_opt, trace_opt, scenario_opt;
  auto* solve = app.add_subcommand("solve", "Run one scheme on one scenario and print its metrics as JSON");
  add_single_options(solve, solve_opt, true);
  auto* trace = app.add_subcommand("trace", "Run one scheme and print the convergence trace as JSON");
  add_single_options(trace, trace_opt, true);
  auto* scen = app.add_subcommand("scenario", "Print a scenario and one channel realization as replayable JSON");
  add_single_options(scen, scenario_opt, false);

  bool show_kernels = false;
  app.add_flag("--kernels", show_kernels, "Print the selected kernel implementation on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json("usage", e.what()).dump() << '\n';
    return 2;
  }
  if (show_kernels) std::cerr << "kernels: " << kernels::active_kernels().name << '\n';

  try {
    if (*run) {
      ExperimentPlan plan = load_plan(plan_file);
      apply_overrides(plan, run_settings);
      if (!run_output.empty()) plan.output = run_output;
      if (!run_format.empty()) plan.format = run_format;
      if (run_jobs > 0) plan.jobs = run_jobs;
      plan.validate();
      const std::string path = resolve_output_path(plan.output);
      const auto rows = run_plan(plan, [&](const ResultRow& r) {
        if (quiet) return;
        std::cerr << r.axis_name << '=' << r.axis_value << ' ' << r.scheme << " seed " << r.seed << ": ";
        if (r.error.empty()) std::cerr << r.wsr << " bps/Hz\n";
        else std::cerr << "failed (" << r.error << ")\n";
      });
      emit(rows, plan.format, path);
      if (!quiet) std::cerr << "wrote " << rows.size() << " rows to " << path << '\n';
    } else if (*solve || *trace) {
      const SingleRun& opt = *solve ? solve_opt : trace_opt;
      const Prepared p = prepare(opt);
      const SchemeRun r = run_scheme(scheme_from_string(opt.scheme), p.scenario, p.table, p.solver);
      Json out = {{"scheme", opt.scheme},
                  {"seed", p.scenario.config.seed},
                  {"m", p.scenario.num_aps()},
                  {"k", p.scenario.num_uts()},
                  {"l", p.scenario.config.paths_per_link},
                  {"power_dbm", p.scenario.config.tx_power_dbm},
                  {"prv_error", p.solver.prv_error},
                  {"mode", to_string(p.solver.mode)},
                  {"metrics", to_json(r.metrics)}};
      if (*trace) out["trace"] = to_json(r.trace);
      deliver(out.dump(2) + "\n", opt.output);
    } else if (*scen) {
      const Prepared p = prepare(scenario_opt);
      deliver(replay_to_json(p.scenario, p.table).dump(2) + "\n", scenario_opt.output);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << error_json("invalid_argument", e.what()).dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << error_json("runtime", e.what()).dump() << '\n';
    return 1;
  }
  return 0;
}
