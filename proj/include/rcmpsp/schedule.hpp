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
#ifndef RCMPSP_SCHEDULE_HPP_
#define RCMPSP_SCHEDULE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcmpsp/instance.hpp"
#include "rcmpsp/rational.hpp"

namespace rcmpsp {

enum class Objective { Makespan, TimeBalance, ResourceBalance };

std::string_view to_string(Objective o);  // "makespan" / "timebalance" / "resourcebalance"
Objective parse_objective(std::string_view text);

// Due-date regimes for delivery activities:
//   A: d <= end <= T (tardiness allowed, earliness not),
//   B: end == d,
//   C: d * (1 - v) <= end <= d.
enum class ScenarioKind { A, B, C };

struct Scenario {
  ScenarioKind kind = ScenarioKind::A;
  Rational earliness{0};  // v, scenario C only

  static Scenario a() { return {}; }
  static Scenario b() { return {ScenarioKind::B, Rational(0)}; }
  static Scenario c(const Rational& v) { return {ScenarioKind::C, v}; }

  std::string str() const;  // "a", "b", "c(1/2)"
};

// Parses "a", "b" or "c"; `v` is used for "c".
Scenario parse_scenario(std::string_view text, const Rational& v = Rational(1, 2));

// Inclusive [earliest, latest] end of a delivery activity with due date d.
std::pair<int, int> due_window(const Scenario& scenario, int due, int horizon);

// Time decisions of the search: end times latest first, or start times
// earliest first. Both end with the remaining starts and lengths.
enum class Branching { EndsFirst, StartsFirst };

struct SolverConfig {
  Objective objective = Objective::Makespan;
  Scenario scenario;
  double time_limit = 3600.0;           // seconds
  int big_m = 0;                        // 0 means the horizon T
  bool balance_flexible_only = false;   // TimeBalance over a_j < b_j only
  bool restart_on_improvement = true;
  Branching branching = Branching::EndsFirst;
  int threads = 1;
  bool check_incumbents = true;
  std::int64_t node_limit = 0;          // 0 means unlimited
};

// Throws ModelError when `cfg` does not fit `inst` (balance objectives on
// RCPSP-AC classes, ResourceBalance without balanced resources, v outside
// (0, 1)).
void check_config(const Instance& inst, const SolverConfig& cfg);

struct ScheduledActivity {
  int id = 0;
  bool present = false;
  int start = 0;
  int end = 0;
  int length() const { return end - start; }
};

// Activities of the original network (no meta nodes), ascending ids.
struct Schedule {
  std::vector<ScheduledActivity> entries;

  const ScheduledActivity* find(int id) const;
  ScheduledActivity* find(int id);
  bool present(int id) const;
};

struct ScheduleMetrics {
  int makespan = 0;  // end of the sink
  int max_buffer = 0;  // B
  int min_buffer = 0;  // S
  std::map<int, int> peak_usage;                // renewable resource -> u_r
  std::map<int, std::vector<int>> usage;        // renewable resource -> per-slot load
  std::map<int, std::int64_t> consumption;      // non-renewable resource -> total
};

// Buffer = length - a_j over present non-dummy activities; B = S = 0 when
// there is none. Usage profiles cover slots [0, horizon).
ScheduleMetrics derive_metrics(const Instance& inst, const Schedule& sched,
                               bool flexible_only = false);

Rational evaluate_objective(const Instance& inst, const Schedule& sched, const SolverConfig& cfg);

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit };

std::string_view to_string(SolveStatus s);  // "OPTIMAL", ...
SolveStatus parse_solve_status(std::string_view text);

struct SolveStats {
  std::int64_t nodes = 0;
  std::int64_t fails = 0;
  std::int64_t restarts = 0;
  std::int64_t incumbents = 0;
  double seconds = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::TimeLimit;
  std::optional<Schedule> schedule;
  std::optional<Rational> objective;
  std::optional<Rational> bound;  // absent when infeasible
  SolveStats stats;
};

}  // namespace rcmpsp

#endif  // RCMPSP_SCHEDULE_HPP_
