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

#include "rcmpsp/schedule.hpp"

#include <algorithm>
#include <utility>

namespace rcmpsp {

std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::Makespan:
      return "makespan";
    case Objective::TimeBalance:
      return "timebalance";
    case Objective::ResourceBalance:
      return "resourcebalance";
  }
  return "?";
}

Objective parse_objective(std::string_view text) {
  for (auto o : {Objective::Makespan, Objective::TimeBalance, Objective::ResourceBalance}) {
    if (to_string(o) == text) return o;
  }
  throw ModelError("unknown objective: " + std::string(text));
}

std::string Scenario::str() const {
  switch (kind) {
    case ScenarioKind::A:
      return "a";
    case ScenarioKind::B:
      return "b";
    case ScenarioKind::C:
      return "c(" + earliness.str() + ")";
  }
  return "?";
}

Scenario parse_scenario(std::string_view text, const Rational& v) {
  if (text == "a") return Scenario::a();
  if (text == "b") return Scenario::b();
  if (text == "c") return Scenario::c(v);
  throw ModelError("unknown scenario: " + std::string(text));
}

std::pair<int, int> due_window(const Scenario& scenario, int due, int horizon) {
  switch (scenario.kind) {
    case ScenarioKind::A:
      return {due, horizon};
    case ScenarioKind::B:
      return {due, due};
    case ScenarioKind::C:
      return {static_cast<int>((Rational(due) * (Rational(1) - scenario.earliness)).ceil()), due};
  }
  return {due, horizon};
}

void check_config(const Instance& inst, const SolverConfig& cfg) {
  if (cfg.objective != Objective::Makespan && inst.problem_class != ProblemClass::RcmpspActf) {
    throw ModelError(std::string(to_string(cfg.objective)) + " needs an RCMPSP_ACTF instance");
  }
  if (cfg.objective == Objective::ResourceBalance && inst.balanced_resources().empty()) {
    throw ModelError("resourcebalance needs at least one balanced resource");
  }
  if (cfg.scenario.kind == ScenarioKind::C &&
      (cfg.scenario.earliness <= Rational(0) || cfg.scenario.earliness >= Rational(1))) {
    throw ModelError("earliness factor must lie in (0, 1)");
  }
  if (cfg.threads < 1) throw ModelError("threads must be positive");
  if (cfg.big_m < 0) throw ModelError("big M must be non-negative");
}

const ScheduledActivity* Schedule::find(int id) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), id,
                             [](const ScheduledActivity& e, int v) { return e.id < v; });
  return it != entries.end() && it->id == id ? &*it : nullptr;
}

ScheduledActivity* Schedule::find(int id) {
  return const_cast<ScheduledActivity*>(std::as_const(*this).find(id));
}

bool Schedule::present(int id) const {
  const auto* e = find(id);
  return e && e->present;
}

ScheduleMetrics derive_metrics(const Instance& inst, const Schedule& sched, bool flexible_only) {
  ScheduleMetrics m;
  const Network& net = inst.network;
  if (const auto* sink = sched.find(net.sink_id())) m.makespan = sink->end;
  bool any = false;
  for (const auto& r : inst.resources) {
    if (r.renewable) {
      m.usage[r.id].assign(static_cast<std::size_t>(std::max(inst.horizon, 0)), 0);
    } else {
      m.consumption[r.id] = 0;
    }
  }
  for (const auto& e : sched.entries) {
    if (!e.present || !net.contains(e.id)) continue;
    const Activity& a = net.activity(e.id);
    if (a.is_dummy()) continue;
    if (!flexible_only || !a.is_fixed()) {
      const int buffer = e.length() - a.min_duration;
      m.max_buffer = any ? std::max(m.max_buffer, buffer) : buffer;
      m.min_buffer = any ? std::min(m.min_buffer, buffer) : buffer;
      any = true;
    }
    for (const auto& [rid, q] : a.demands) {
      if (q == 0) continue;
      if (auto it = m.usage.find(rid); it != m.usage.end()) {
        auto& prof = it->second;
        const int lo = std::max(e.start, 0);
        const int hi = std::min(e.end, static_cast<int>(prof.size()));
        for (int t = lo; t < hi; ++t) prof[t] += q;
      } else if (auto c = m.consumption.find(rid); c != m.consumption.end()) {
        c->second += q;
      }
    }
  }
  for (const auto& [rid, prof] : m.usage) {
    m.peak_usage[rid] = prof.empty() ? 0 : *std::max_element(prof.begin(), prof.end());
  }
  return m;
}

Rational evaluate_objective(const Instance& inst, const Schedule& sched, const SolverConfig& cfg) {
  const auto m = derive_metrics(inst, sched, cfg.balance_flexible_only);
  switch (cfg.objective) {
    case Objective::Makespan:
      return Rational(m.makespan);
    case Objective::TimeBalance:
      return Rational(m.max_buffer - m.min_buffer);
    case Objective::ResourceBalance: {
      const auto balanced = inst.balanced_resources();
      if (balanced.empty()) throw ModelError("resourcebalance needs a balanced resource");
      Rational best(0);
      for (int r : balanced) {
        best = std::max(best, Rational(m.peak_usage.at(r), inst.resource(r).capacity));
      }
      return best;
    }
  }
  return Rational(0);
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "OPTIMAL";
    case SolveStatus::Feasible:
      return "FEASIBLE";
    case SolveStatus::Infeasible:
      return "INFEASIBLE";
    case SolveStatus::TimeLimit:
      return "TIME_LIMIT";
  }
  return "?";
}

SolveStatus parse_solve_status(std::string_view text) {
  for (auto s : {SolveStatus::Optimal, SolveStatus::Feasible, SolveStatus::Infeasible,
                 SolveStatus::TimeLimit}) {
    if (to_string(s) == text) return s;
  }
  throw ModelError("unknown status: " + std::string(text));
}

}  // namespace rcmpsp
