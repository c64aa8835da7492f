// Copyright 2026 The rcmpsp Authors
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

// rcmpsp: generate, solve, validate, bench and chart scheduling instances.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rcmpsp/generator.hpp"
#include "rcmpsp/io.hpp"
#include "rcmpsp/oracle.hpp"
#include "rcmpsp/report.hpp"
#include "rcmpsp/solver.hpp"

namespace fs = std::filesystem;
using namespace rcmpsp;

namespace {

// Process exit codes. Solve uses one code per status.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFeasible = 10;
constexpr int kExitInfeasible = 20;
constexpr int kExitTimeLimit = 30;

int exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return kExitOk;
    case SolveStatus::Feasible: return kExitFeasible;
    case SolveStatus::Infeasible: return kExitInfeasible;
    case SolveStatus::TimeLimit: return kExitTimeLimit;
  }
  return kExitFailure;
}

// "3" or "1..5".
std::vector<int> parse_int_ranges(const std::vector<std::string>& specs) {
  std::vector<int> out;
  for (const auto& spec : specs) {
    const auto dots = spec.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoi(spec));
      continue;
    }
    const int lo = std::stoi(spec.substr(0, dots));
    const int hi = std::stoi(spec.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range " + spec);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

// Instance paths listed one per line, relative to the manifest; blank
// lines and lines starting with '#' are skipped.
std::vector<std::string> read_manifest(const std::string& path) {
  std::istringstream in(read_text_file(path));
  const fs::path base = fs::path(path).parent_path();
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    out.push_back(fs::path(line).is_absolute() ? line : (base / line).string());
  }
  return out;
}

struct ModelOptions {
  std::string objective = "makespan";
  std::string scenario = "a";
  std::string earliness = "1/2";
  int big_m = 0;
  bool flexible_only = false;

  void add_to(CLI::App* app) {
    app->add_option("--objective", objective, "makespan, timebalance or resourcebalance")
        ->check(CLI::IsMember({"makespan", "timebalance", "resourcebalance"}));
    app->add_option("--scenario", scenario, "Due-date scenario")
        ->check(CLI::IsMember({"a", "b", "c"}));
    app->add_option("--earliness-v", earliness, "Earliness share v of scenario c, e.g. 1/2 or 0.1");
    app->add_option("--big-m", big_m, "Big-M of the balance constraints (0: horizon)");
    app->add_flag("--flexible-only", flexible_only, "TimeBalance over flexible activities only");
  }

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.objective = parse_objective(objective);
    cfg.scenario = parse_scenario(scenario, parse_fraction(earliness));
    cfg.big_m = big_m;
    cfg.balance_flexible_only = flexible_only;
    return cfg;
  }

  // Accepts "p/q" and decimal fractions such as "0.1".
  static Rational parse_fraction(const std::string& text) {
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational::parse(text);
    const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 9 ||
        !std::all_of(frac.begin(), frac.end(), [](char c) { return std::isdigit(c); })) {
      throw std::invalid_argument("not a fraction: " + text);
    }
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t w = whole.empty() ? 0 : std::stoll(whole);
    return Rational(w * den + std::stoll(frac), den);
  }
};

SolveResult run_solver(const Instance& inst, const std::string& solver, const SolverConfig& cfg) {
  if (solver == "oracle") return brute_force_solve(inst, cfg);
  return solve(inst, cfg);
}

// ---- generate ----

struct GenerateOptions {
  std::string problem_class = "actf";
  std::vector<int> lots{10, 50, 100};
  std::vector<std::string> multipliers{"1..5"};
  int seeds = 5;
  std::uint64_t seed = 1;
  bool toy = false;
  bool case_study = false;
  std::string out = "instances";
};

int cmd_generate(const GenerateOptions& o) {
  std::vector<Instance> made;
  if (o.toy) {
    made.push_back(make_toy_instance());
  } else if (o.case_study) {
    made.push_back(generate_case_study_instance(o.seed));
  } else if (o.problem_class == "actf") {
    for (int lots : o.lots)
      for (Pattern pattern : {Pattern::RealWorld, Pattern::Random})
        for (int q = 1; q <= 4; ++q)
          for (int k = 0; k < o.seeds; ++k) {
            GeneratorParams p;
            p.lot_count = lots;
            p.pattern = pattern;
            p.resource_strength = Rational(q, 4);
            p.seed = o.seed + static_cast<std::uint64_t>(k);
            made.push_back(generate_actf_instance(p));
          }
  } else {
    std::vector<AcMode> modes;
    if (o.problem_class != "rcmpsp_ac") modes.push_back(AcMode::Single);
    if (o.problem_class != "rcpsp_ac") modes.push_back(AcMode::Multi);
    for (AcMode mode : modes)
      for (int m : parse_int_ranges(o.multipliers))
        for (int k = 0; k < o.seeds; ++k)
          made.push_back(generate_ac_instance(m, mode, o.seed + static_cast<std::uint64_t>(k)));
  }
  fs::create_directories(o.out);
  std::string manifest;
  for (const auto& inst : made) {
    const std::string file = inst.name + ".json";
    write_instance_file((fs::path(o.out) / file).string(), inst);
    manifest += file + "\n";
  }
  write_text_file((fs::path(o.out) / "manifest.txt").string(), manifest);
  std::cout << "wrote " << made.size() << " instance" << (made.size() == 1 ? "" : "s") << " to "
            << o.out << "\n";
  return kExitOk;
}

// ---- solve ----

struct SolveOptions {
  std::string instance;
  std::string solver = "bb";
  ModelOptions model;
  double time_limit = 3600.0;
  int threads = 1;
  std::string branching = "ends";
  std::string schedule_out;
  std::string record_out;
};

int cmd_solve(const SolveOptions& o) {
  const Instance inst = read_instance_file(o.instance);
  SolverConfig cfg = o.model.config();
  cfg.time_limit = o.time_limit;
  cfg.threads = o.threads;
  cfg.branching = o.branching == "ends" ? Branching::EndsFirst : Branching::StartsFirst;
  const SolveResult result = run_solver(inst, o.solver, cfg);
  const RunRecord record = make_record(inst, o.solver, cfg, result);
  const std::string csv = records_csv({record});
  if (o.record_out.empty()) {
    std::cout << csv;
  } else {
    write_text_file(o.record_out, csv);
  }
  if (result.schedule) {
    const std::string path = o.schedule_out.empty()
                                 ? (fs::path(o.instance).replace_extension(".schedule.json")).string()
                                 : o.schedule_out;
    write_text_file(path, dump_schedule(inst, *result.schedule));
    std::cerr << "schedule written to " << path << "\n";
  }
  std::cerr << to_string(result.status);
  if (result.objective) std::cerr << " value " << result.objective->str();
  if (result.bound) std::cerr << " bound " << result.bound->str();
  std::cerr << " nodes " << result.stats.nodes << "\n";
  return exit_code(result.status);
}

// ---- validate ----

struct ValidateOptions {
  std::string instance;
  std::string schedule;
  ModelOptions model;
  bool prune = false;
};

int cmd_validate(const ValidateOptions& o) {
  const Instance inst = read_instance_file(o.instance);
  const ScheduleFile file = parse_schedule(read_text_file(o.schedule));
  std::vector<Violation> issues;
  if (file.fingerprint != instance_fingerprint(inst)) {
    issues.push_back({"structure", {}, -1,
                      "schedule belongs to instance '" + file.instance_name + "' (fingerprint " +
                          file.fingerprint + "), not '" + inst.name + "'"});
  } else {
    const Schedule sched = o.prune ? prune(inst, file.schedule) : file.schedule;
    issues = validate_schedule(inst, sched, o.model.config());
  }
  for (const auto& v : issues) std::cout << v.text() << "\n";
  if (issues.empty()) std::cout << "clean\n";
  return issues.empty() ? kExitOk : kExitFailure;
}

// ---- bench ----

struct BenchOptions {
  std::string manifest;
  std::vector<std::string> solvers{"bb"};
  std::vector<std::string> objectives{"makespan"};
  std::vector<std::string> scenarios{"a"};
  std::string earliness = "1/2";
  double time_limit = 3600.0;
  int jobs = 1;
  std::string out = "bench";
};

int cmd_bench(const BenchOptions& o) {
  struct Task {
    std::string path;
    std::string solver;
    SolverConfig cfg;
  };
  std::vector<Task> tasks;
  for (const auto& path : read_manifest(o.manifest))
    for (const auto& objective : o.objectives)
      for (const auto& scenario : o.scenarios)
        for (const auto& solver : o.solvers) {
          SolverConfig cfg;
          cfg.objective = parse_objective(objective);
          cfg.scenario = parse_scenario(scenario, ModelOptions::parse_fraction(o.earliness));
          cfg.time_limit = o.time_limit;
          tasks.push_back({path, solver, cfg});
        }

  // Results land in task order whatever the number of workers.
  std::vector<std::optional<RunRecord>> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex log;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      const Instance inst = read_instance_file(t.path);
      try {
        check_config(inst, t.cfg);
      } catch (const ModelError&) {
        continue;  // objective does not apply to this class
      }
      RunRecord rec;
      try {
        rec = make_record(inst, t.solver, t.cfg, run_solver(inst, t.solver, t.cfg));
      } catch (const LimitsExceeded&) {
        rec = make_record(inst, t.solver, t.cfg, SolveResult{});
      }
      {
        std::lock_guard<std::mutex> lock(log);
        std::cerr << rec.instance << " " << rec.solver << " " << to_string(rec.objective) << " "
                  << rec.scenario << " " << to_string(rec.status) << "\n";
      }
      records[i] = std::move(rec);
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < std::max(1, o.jobs); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<RunRecord> done;
  for (auto& r : records)
    if (r) done.push_back(std::move(*r));
  write_text_file(o.out + "_runs.csv", records_csv(done));
  write_text_file(o.out + "_runs.json", records_json(done));
  const std::string summary = aggregate_csv(aggregate(done));
  write_text_file(o.out + "_summary.csv", summary);
  std::cout << summary;
  return kExitOk;
}

// ---- gantt ----

struct GanttOptions {
  std::string instance;
  std::string schedule;
  std::string svg;
  int width = 72;
};

int cmd_gantt(const GanttOptions& o) {
  const Instance inst = read_instance_file(o.instance);
  const ScheduleFile file = parse_schedule(read_text_file(o.schedule));
  std::cout << gantt_text(inst, file.schedule, o.width);
  if (!o.svg.empty()) write_text_file(o.svg, gantt_svg(inst, file.schedule));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scheduling with alternative routes and flexible durations"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Write benchmark instances and a manifest");
  g->add_option("--class", gen.problem_class, "actf, ac, rcpsp_ac or rcmpsp_ac")
      ->check(CLI::IsMember({"actf", "ac", "rcpsp_ac", "rcmpsp_ac"}));
  g->add_option("--lots", gen.lots, "Lot counts of the actf grid");
  g->add_option("--multiplier", gen.multipliers, "Size multipliers of the ac classes, e.g. 1..5");
  g->add_option("--seeds", gen.seeds, "Instances per group")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "First seed");
  g->add_flag("--toy", gen.toy, "Only the two-lot demo instance");
  g->add_flag("--case-study", gen.case_study, "Only the fifty-lot, eight-resource instance");
  g->add_option("--out", gen.out, "Output directory");

  SolveOptions sol;
  auto* s = app.add_subcommand("solve", "Solve one instance");
  s->add_option("instance", sol.instance, "Instance file")->required();
  s->add_option("--solver", sol.solver, "bb or oracle")->check(CLI::IsMember({"bb", "oracle"}));
  sol.model.add_to(s);
  s->add_option("--time-limit", sol.time_limit, "Seconds")->check(CLI::NonNegativeNumber);
  s->add_option("--threads", sol.threads, "Search workers")->check(CLI::PositiveNumber);
  s->add_option("--branching", sol.branching, "Time decisions: ends latest first or starts earliest first")
      ->check(CLI::IsMember({"ends", "starts"}));
  s->add_option("--out", sol.schedule_out, "Schedule file (default: <instance>.schedule.json)");
  s->add_option("--record", sol.record_out, "Run record CSV (default: stdout)");

  ValidateOptions val;
  auto* v = app.add_subcommand("validate", "Check a schedule against every constraint");
  v->add_option("instance", val.instance, "Instance file")->required();
  v->add_option("schedule", val.schedule, "Schedule file")->required();
  val.model.add_to(v);
  v->add_flag("--prune", val.prune, "Drop selected activities unreachable from the source first");

  BenchOptions ben;
  auto* b = app.add_subcommand("bench", "Solve every manifest entry and tabulate");
  b->add_option("manifest", ben.manifest, "Manifest file")->required();
  b->add_option("--solver", ben.solvers, "bb and/or oracle")
      ->check(CLI::IsMember({"bb", "oracle"}));
  b->add_option("--objective", ben.objectives, "Objectives")
      ->check(CLI::IsMember({"makespan", "timebalance", "resourcebalance"}));
  b->add_option("--scenario", ben.scenarios, "Scenarios")->check(CLI::IsMember({"a", "b", "c"}));
  b->add_option("--earliness-v", ben.earliness, "Earliness share v of scenario c");
  b->add_option("--time-limit", ben.time_limit, "Seconds per run")
      ->check(CLI::NonNegativeNumber);
  b->add_option("--jobs", ben.jobs, "Parallel runs")->check(CLI::PositiveNumber);
  b->add_option("--out", ben.out, "Output prefix for _runs.csv, _runs.json and _summary.csv");

  GanttOptions gan;
  auto* c = app.add_subcommand("gantt", "Chart a schedule");
  c->add_option("instance", gan.instance, "Instance file")->required();
  c->add_option("schedule", gan.schedule, "Schedule file")->required();
  c->add_option("--svg", gan.svg, "Also write an SVG chart");
  c->add_option("--width", gan.width, "Text chart columns")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (*g) return cmd_generate(gen);
    if (*s) return cmd_solve(sol);
    if (*v) return cmd_validate(val);
    if (*b) return cmd_bench(ben);
    if (*c) return cmd_gantt(gan);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
