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
#ifndef RCMPSP_SOLVER_HPP_
#define RCMPSP_SOLVER_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rcmpsp/instance.hpp"
#include "rcmpsp/schedule.hpp"

namespace rcmpsp {

enum class Presence { Present, Absent, Undecided };

// Domain of one activity. Windows describe the activity if it is present.
struct IntervalVar {
  int id = 0;
  Presence presence = Presence::Undecided;
  int est = 0, lst = 0;    // start window
  int eet = 0, let = 0;    // end window
  int lmin = 0, lmax = 0;  // length window
};

// Mutable search node: one window per real activity (index order of
// SearchModel::activity_ids()), one candidate-route bit set per lot, the
// sink's start window and the objective cutoff.
struct SearchState {
  std::vector<int> est, lst, eet, let, lmin, lmax;
  std::vector<std::uint64_t> routes;
  int sink_est = 0;
  int sink_lst = 0;
  std::optional<Rational> cutoff;  // objective must stay strictly below
};

class SearchModel {
 public:
  // Throws ModelError on an invalid instance or a config that does not fit
  // it, and on lots with more than 64 routes.
  SearchModel(const Instance& inst, const SolverConfig& cfg);
  ~SearchModel();
  SearchModel(const SearchModel&) = delete;
  SearchModel& operator=(const SearchModel&) = delete;

  const std::vector<int>& activity_ids() const;
  SearchState root() const;

  // Shrinks windows to a fixpoint; false when the state has no solution.
  bool propagate(SearchState& state) const;

  // Children in search order. Precondition: propagated and not fixed.
  std::vector<SearchState> branch(const SearchState& state) const;

  bool is_fixed(const SearchState& state) const;
  Rational lower_bound(const SearchState& state) const;
  IntervalVar var(const SearchState& state, int id) const;
  Presence presence(const SearchState& state, int id) const;

  // Mandatory load of resource `r` per slot [0, T).
  std::vector<int> timetable(const SearchState& state, int r) const;

  // Requires is_fixed(state).
  Schedule extract(const SearchState& state) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Branch-and-bound over SearchModel.
SolveResult solve(const Instance& inst, const SolverConfig& cfg);

}  // namespace rcmpsp

#endif  // RCMPSP_SOLVER_HPP_
