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
#ifndef RCMPSP_ORACLE_HPP_
#define RCMPSP_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcmpsp/instance.hpp"
#include "rcmpsp/schedule.hpp"

namespace rcmpsp {

// Slot-level view of a schedule: for activity j and slot t in [0, T],
// s = started, w = working, y = completed, plus the selection x_j and the
// claimed values of the balance variables B, S and u_r. Cells are plain
// integers so that non-binary values can be represented and rejected.
struct TimeIndexedRow {
  int id = 0;
  int x = 0;
  std::vector<int> s, w, y;
};

struct TimeIndexedSchedule {
  int horizon = 0;
  std::vector<TimeIndexedRow> rows;  // ascending id
  int max_buffer = 0;                // B
  int min_buffer = 0;                // S
  std::map<int, int> peak_usage;     // u_r for balanced resources

  TimeIndexedRow* row(int id);
  const TimeIndexedRow* row(int id) const;
};

// s at the start slot, y at the end slot, w on [start, end). Claimed B, S
// and u_r are taken from derive_metrics. Throws ModelError for times
// outside [0, T], end < start, or ids missing from the instance.
TimeIndexedSchedule to_time_indexed(const Instance& inst, const Schedule& sched,
                                    bool flexible_only = false);

// Inverse mapping; rows must be well formed.
Schedule from_time_indexed(const TimeIndexedSchedule& ti);

struct Violation {
  std::string tag;  // "Eq.7", "Eq.16", "c.11", "structure", ...
  std::vector<int> ids;
  int slot = -1;
  std::string message;

  std::string text() const;
};

// Every implemented constraint tag, in check order.
const std::vector<std::string>& validator_tags();

std::vector<Violation> validate_time_indexed(const Instance& inst, const TimeIndexedSchedule& ti,
                                             const SolverConfig& cfg);

// Empty iff `sched` is feasible for the configured model and scenario.
std::vector<Violation> validate_schedule(const Instance& inst, const Schedule& sched,
                                         const SolverConfig& cfg);

// Drops selected activities that are not reachable from the source through
// selected relations (for an OR activity, its first fully selected bundle).
Schedule prune(const Instance& inst, const Schedule& sched);

struct OracleLimits {
  double max_space = 1e12;          // search-space estimate ceiling
  std::int64_t max_nodes = 200000000;
};

class LimitsExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Π_lots Σ_routes (T · Π_route (b_j − a_j + 1)).
double search_space_estimate(const Instance& inst);

// Exhaustive optimum over route selections, integer starts and lengths.
// Returns OPTIMAL or INFEASIBLE; throws LimitsExceeded.
SolveResult brute_force_solve(const Instance& inst, const SolverConfig& cfg,
                              const OracleLimits& limits = {});

}  // namespace rcmpsp

#endif  // RCMPSP_ORACLE_HPP_
