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

#ifndef RCMPSP_REPORT_HPP_
#define RCMPSP_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcmpsp/instance.hpp"
#include "rcmpsp/rational.hpp"
#include "rcmpsp/schedule.hpp"

namespace rcmpsp {

// One solver run on one instance.
struct RunRecord {
  std::string instance;
  std::string solver;  // "bb" or "oracle"
  ProblemClass problem_class = ProblemClass::RcmpspActf;
  Objective objective = Objective::Makespan;
  std::string scenario;  // Scenario::str()
  SolveStatus status = SolveStatus::TimeLimit;
  std::optional<Rational> value;
  std::optional<Rational> bound;
  double runtime_s = 0.0;
  std::int64_t nodes = 0;
  std::uint64_t seed = 0;
};

RunRecord make_record(const Instance& inst, const std::string& solver, const SolverConfig& cfg,
                      const SolveResult& result);

// Columns: instance,solver,class,objective,scenario,status,value,bound,
// runtime_s,nodes,seed. Rationals print as "p/q", absent values as "".
std::string records_csv_header();
std::string records_csv(const std::vector<RunRecord>& records);
std::string records_json(const std::vector<RunRecord>& records);

// Instance group: the name without its trailing "_s<seed>" part.
std::string instance_group(const std::string& instance);

// Summary of the runs sharing group, solver, objective and scenario.
struct AggregateRow {
  std::string group;
  std::string solver;
  Objective objective = Objective::Makespan;
  std::string scenario;
  int instances = 0;
  std::optional<double> mean_value;  // over runs with a value
  std::optional<double> mean_bound;  // over runs with a bound
  double mean_runtime_s = 0.0;
  int optimal = 0;   // status OPTIMAL
  int feasible = 0;  // status FEASIBLE, i.e. not proven
  // Set when another solver finished the same runs: true iff every pair
  // of proven results (OPTIMAL or INFEASIBLE) agrees.
  std::optional<bool> agreement;
};

// Rows sorted by group, solver, objective, scenario.
std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records);

// Columns: group,solver,objective,scenario,instances,mean_value,mean_bound,
// mean_runtime_s,opt,feasible,agreement.
std::string aggregate_csv(const std::vector<AggregateRow>& rows);

// One row per lot, with extra lanes where activities of a lot overlap.
// Absent and zero-length activities are left out; activities without a lot
// share a final row.
std::string gantt_text(const Instance& inst, const Schedule& sched, int width = 72);
std::string gantt_svg(const Instance& inst, const Schedule& sched);

}  // namespace rcmpsp

#endif  // RCMPSP_REPORT_HPP_
