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

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "rcmpsp/oracle.hpp"

namespace rcmpsp {

TimeIndexedRow* TimeIndexedSchedule::row(int id) {
  return const_cast<TimeIndexedRow*>(std::as_const(*this).row(id));
}

const TimeIndexedRow* TimeIndexedSchedule::row(int id) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), id,
                             [](const TimeIndexedRow& r, int v) { return r.id < v; });
  return it != rows.end() && it->id == id ? &*it : nullptr;
}

TimeIndexedSchedule to_time_indexed(const Instance& inst, const Schedule& sched,
                                    bool flexible_only) {
  const int horizon = inst.horizon;
  const auto slots = static_cast<std::size_t>(horizon) + 1;
  TimeIndexedSchedule ti;
  ti.horizon = horizon;
  for (const auto& e : sched.entries) {
    if (!inst.network.contains(e.id)) {
      throw ModelError("schedule names unknown activity " + std::to_string(e.id));
    }
    TimeIndexedRow row;
    row.id = e.id;
    row.s.assign(slots, 0);
    row.w.assign(slots, 0);
    row.y.assign(slots, 0);
    if (e.present) {
      if (e.start < 0 || e.end > horizon || e.end < e.start) {
        throw ModelError("activity " + std::to_string(e.id) + " interval [" +
                         std::to_string(e.start) + ", " + std::to_string(e.end) +
                         ") outside [0, " + std::to_string(horizon) + "]");
      }
      row.x = 1;
      row.s[e.start] = 1;
      row.y[e.end] = 1;
      for (int t = e.start; t < e.end; ++t) row.w[t] = 1;
    }
    ti.rows.push_back(std::move(row));
  }
  std::sort(ti.rows.begin(), ti.rows.end(),
            [](const TimeIndexedRow& a, const TimeIndexedRow& b) { return a.id < b.id; });
  const auto m = derive_metrics(inst, sched, flexible_only);
  ti.max_buffer = m.max_buffer;
  ti.min_buffer = m.min_buffer;
  for (int r : inst.balanced_resources()) ti.peak_usage[r] = m.peak_usage.at(r);
  return ti;
}

Schedule from_time_indexed(const TimeIndexedSchedule& ti) {
  Schedule out;
  for (const auto& row : ti.rows) {
    ScheduledActivity e;
    e.id = row.id;
    e.present = row.x == 1;
    if (e.present) {
      for (std::size_t t = 0; t < row.s.size(); ++t) {
        if (row.s[t]) e.start = static_cast<int>(t);
        if (row.y[t]) e.end = static_cast<int>(t);
      }
    }
    out.entries.push_back(e);
  }
  return out;
}

std::string Violation::text() const {
  std::ostringstream os;
  os << tag;
  if (!ids.empty()) {
    os << " [";
    for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << ids[i];
    os << "]";
  }
  if (slot >= 0) os << " t=" << slot;
  os << ": " << message;
  return os.str();
}

const std::vector<std::string>& validator_tags() {
  static const std::vector<std::string> kTags = {
      "Eq.17", "Eq.18", "Eq.3",  "Eq.4",  "Eq.12", "Eq.13", "Eq.14", "Eq.2",
      "Eq.5",  "Eq.6",  "Eq.7",  "c.11",  "Eq.8",  "Eq.9",  "Eq.10", "c.6",
      "Eq.11", "Eq.15", "Eq.45b", "Eq.45c", "Eq.16", "c.7",  "c.8",  "Eq.24",
      "Eq.25", "Eq.26", "Eq.27", "Eq.20", "Eq.21", "Eq.22"};
  return kTags;
}

namespace {

struct RowInfo {
  bool selected = false;
  bool well_formed = false;  // binary cells, one start and one end iff selected
  bool timed = false;        // well formed and w consistent
  int start = 0;
  int end = 0;
  int worked = 0;            // Σ_t w
};

class Checker {
 public:
  Checker(const Instance& inst, const TimeIndexedSchedule& ti, const SolverConfig& cfg)
      : inst_(inst), net_(inst.network), ti_(ti), cfg_(cfg),
        actf_(inst.problem_class == ProblemClass::RcmpspActf) {}

  std::vector<Violation> run() {
    if (!structure()) return out_;
    rows();
    source_start();
    selection();
    timing();
    due_dates();
    resources();
    balance();
    return out_;
  }

 private:
  void add(std::string tag, std::vector<int> ids, int slot, std::string message) {
    out_.push_back({std::move(tag), std::move(ids), slot, std::move(message)});
  }

  bool structure() {
    const std::size_t before = out_.size();
    if (ti_.horizon != inst_.horizon) {
      add("structure", {}, -1,
          "horizon " + std::to_string(ti_.horizon) + " != " + std::to_string(inst_.horizon));
    }
    const auto slots = static_cast<std::size_t>(inst_.horizon) + 1;
    std::set<int> seen;
    for (const auto& row : ti_.rows) {
      if (!net_.contains(row.id) || net_.activity(row.id).is_meta()) {
        add("structure", {row.id}, -1, "row for an activity outside the instance");
      } else if (!seen.insert(row.id).second) {
        add("structure", {row.id}, -1, "duplicate row");
      } else if (row.s.size() != slots || row.w.size() != slots || row.y.size() != slots) {
        add("structure", {row.id}, -1, "row length differs from T + 1");
      }
    }
    for (const auto& a : net_.activities()) {
      if (!a.is_meta() && !seen.count(a.id)) add("structure", {a.id}, -1, "missing row");
    }
    return out_.size() == before;
  }

  void rows() {
    for (const auto& row : ti_.rows) {
      RowInfo info;
      info.selected = row.x != 0;
      bool binary = true;
      if (row.x != 0 && row.x != 1) {
        add("Eq.17", {row.id}, -1, "x = " + std::to_string(row.x));
        binary = false;
      }
      for (int t = 0; t <= ti_.horizon && binary; ++t) {
        for (int v : {row.s[t], row.w[t], row.y[t]}) {
          if (v != 0 && v != 1) {
            add("Eq.18", {row.id}, t, "non-binary cell " + std::to_string(v));
            binary = false;
            break;
          }
        }
      }
      info.worked = std::accumulate(row.w.begin(), row.w.end(), 0);
      if (binary) {
        const int starts = std::accumulate(row.s.begin(), row.s.end(), 0);
        const int ends = std::accumulate(row.y.begin(), row.y.end(), 0);
        bool ok = true;
        if (starts != row.x) {
          add("Eq.3", {row.id}, -1, std::to_string(starts) + " starts, x = " + std::to_string(row.x));
          ok = false;
        }
        if (ends != row.x) {
          add("Eq.4", {row.id}, -1, std::to_string(ends) + " ends, x = " + std::to_string(row.x));
          ok = false;
        }
        info.well_formed = ok;
      }
      if (info.well_formed) {
        for (int t = 0; t <= ti_.horizon; ++t) {
          if (row.s[t]) info.start = t;
          if (row.y[t]) info.end = t;
        }
        int open = 0;
        info.timed = true;
        for (int t = 0; t <= ti_.horizon; ++t) {
          open += row.s[t] - row.y[t];
          if (row.w[t] != open) {
            add("Eq.12", {row.id}, t,
                "w = " + std::to_string(row.w[t]) + ", expected " + std::to_string(open));
            info.timed = false;
            break;
          }
        }
      }
      if (binary) {
        const Activity& a = net_.activity(row.id);
        if (info.worked < a.min_duration * row.x) {
          add("Eq.13", {row.id}, -1,
              "works " + std::to_string(info.worked) + " < a = " + std::to_string(a.min_duration));
        }
        if (info.worked > a.max_duration * row.x) {
          add("Eq.14", {row.id}, -1,
              "works " + std::to_string(info.worked) + " > b = " + std::to_string(a.max_duration));
        }
      }
      info_[row.id] = info;
    }
  }

  bool sel(int id) const { return info_.at(id).selected; }
  const RowInfo& info(int id) const { return info_.at(id); }

  void source_start() {
    const auto* row = ti_.row(net_.source_id());
    if (row->s[0] != 1) add("Eq.2", {net_.source_id()}, 0, "source does not start at slot 0");
  }

  void selection() {
    for (const auto& a : net_.activities()) {
      if (a.is_meta()) continue;
      const auto& bundles = net_.bundles(a.id);
      if (a.kind == ActivityKind::Or) {
        int full = 0;
        int partial = 0;
        for (const auto& b : bundles) {
          const auto on = std::count_if(b.begin(), b.end(), [&](int v) { return sel(v); });
          if (on == static_cast<long>(b.size())) {
            ++full;
          } else if (on > 0) {
            ++partial;
          }
        }
        const int want = sel(a.id) ? 1 : 0;
        if (full != want || partial != 0) {
          add("Eq.5", {a.id}, -1,
              std::to_string(full) + " complete and " + std::to_string(partial) +
                  " partial relations selected, x = " + std::to_string(want));
        }
      } else if ((a.kind == ActivityKind::And || a.kind == ActivityKind::Source) && sel(a.id)) {
        for (int j : net_.successors(a.id)) {
          if (!sel(j)) add("Eq.6", {a.id, j}, -1, "successor of a selected AND activity unselected");
        }
      } else if (a.kind == ActivityKind::Out && actf_) {
        const auto& preds = net_.predecessors(a.id);
        const auto on = std::count_if(preds.begin(), preds.end(), [&](int v) { return sel(v); });
        if (on != (sel(a.id) ? 1 : 0)) {
          add("Eq.7", {a.id}, -1,
              std::to_string(on) + " selected predecessors, x = " + (sel(a.id) ? "1" : "0"));
        }
      }
    }
    if (!actf_) {
      const auto reached = reachable();
      for (const auto& a : net_.activities()) {
        if (!a.is_meta() && sel(a.id) && !reached.count(a.id)) {
          add("c.11", {a.id}, -1, "selected outside the selected routes");
        }
      }
    }
  }

 public:
  // Activities reached from the source through selected relations.
  static std::set<int> reach(const Network& net, const std::function<bool(int)>& on) {
    std::set<int> seen;
    if (!on(net.source_id())) return seen;
    std::vector<int> stack = {net.source_id()};
    seen.insert(net.source_id());
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      const auto& bundles = net.bundles(v);
      std::vector<int> next;
      if (net.activity(v).kind == ActivityKind::Or) {
        for (const auto& b : bundles) {
          if (std::all_of(b.begin(), b.end(), on)) {
            next = b;
            break;
          }
        }
      } else {
        for (int j : net.successors(v)) {
          if (on(j)) next.push_back(j);
        }
      }
      for (int j : next) {
        if (seen.insert(j).second) stack.push_back(j);
      }
    }
    return seen;
  }

 private:
  std::set<int> reachable() const {
    return reach(net_, [&](int v) { return sel(v); });
  }

  bool intra_lot(int i, int j) const {
    const Activity& a = net_.activity(i);
    const Activity& b = net_.activity(j);
    return !a.is_dummy() && !b.is_dummy() && a.lot && b.lot && *a.lot == *b.lot;
  }

  void timing() {
    if (!actf_) {
      for (const auto& [i, j] : net_.arcs()) {
        if (!sel(i) || !sel(j) || !info(i).timed || !info(j).timed) continue;
        if (info(i).end > info(j).start) {
          add("c.6", {i, j}, info(j).start,
              "starts at " + std::to_string(info(j).start) + " before predecessor end " +
                  std::to_string(info(i).end));
        }
      }
      return;
    }
    for (const auto& a : net_.activities()) {
      if (a.is_dummy()) continue;
      const int j = a.id;
      std::vector<int> lot_preds;
      for (int i : net_.predecessors(j)) {
        if (intra_lot(i, j)) lot_preds.push_back(i);
      }
      if (lot_preds.empty()) continue;
      const bool out = a.kind == ActivityKind::Out;
      bool any = false;
      for (int i : lot_preds) {
        if (!sel(i)) continue;
        any = true;
        if (!sel(j) || !info(i).timed || !info(j).timed) continue;
        if (info(i).end != info(j).start) {
          const std::string tag =
              out ? "Eq.10" : (net_.activity(i).kind == ActivityKind::Or ? "Eq.8" : "Eq.9");
          add(tag, {i, j}, info(j).start,
              "start " + std::to_string(info(j).start) + " != predecessor end " +
                  std::to_string(info(i).end));
        }
      }
      if (sel(j) && !any) {
        const bool from_or = std::any_of(lot_preds.begin(), lot_preds.end(), [&](int i) {
          return net_.activity(i).kind == ActivityKind::Or;
        });
        add(out ? "Eq.10" : (from_or ? "Eq.8" : "Eq.9"), {j}, -1,
            "selected without a selected predecessor in its lot");
      }
    }
    const int sink = net_.sink_id();
    for (int d : net_.delivery_set()) {
      if (!sel(d) || !info(d).timed) continue;
      if (!sel(sink) || !info(sink).timed) {
        add("Eq.11", {d, sink}, -1, "sink not scheduled");
      } else if (info(d).end > info(sink).start) {
        add("Eq.11", {d, sink}, info(d).end,
            "delivery ends after the sink starts at " + std::to_string(info(sink).start));
      }
    }
  }

  void due_dates() {
    if (!actf_) return;
    for (int d : net_.delivery_set()) {
      const Activity& a = net_.activity(d);
      if (!a.due_date || !sel(d) || !info(d).timed) continue;
      const int end = info(d).end;
      const int due = *a.due_date;
      const auto [lo, hi] = due_window(cfg_.scenario, due, inst_.horizon);
      const std::string tag = cfg_.scenario.kind == ScenarioKind::A   ? "Eq.15"
                              : cfg_.scenario.kind == ScenarioKind::B ? "Eq.45b"
                                                                      : "Eq.45c";
      if (end < lo || end > hi) {
        add(tag, {d}, end,
            "ends at " + std::to_string(end) + ", allowed [" + std::to_string(lo) + ", " +
                std::to_string(hi) + "] for due date " + std::to_string(due));
      }
    }
  }

  std::vector<int> load(int r) const {
    std::vector<int> prof(static_cast<std::size_t>(ti_.horizon) + 1, 0);
    for (const auto& row : ti_.rows) {
      const int q = net_.activity(row.id).demand(r);
      if (q == 0) continue;
      for (int t = 0; t <= ti_.horizon; ++t) prof[t] += row.w[t] * q;
    }
    return prof;
  }

  void capacity(const std::string& tag, int r, int limit, const std::string& what) {
    const auto prof = load(r);
    for (int t = 0; t <= ti_.horizon; ++t) {
      if (prof[t] > limit) {
        add(tag, {r}, t,
            "load " + std::to_string(prof[t]) + " > " + what + " " + std::to_string(limit));
        return;
      }
    }
  }

  void resources() {
    const bool rb = actf_ && cfg_.objective == Objective::ResourceBalance;
    for (const auto& res : inst_.resources) {
      if (!res.renewable) {
        if (actf_) continue;
        std::int64_t used = 0;
        for (const auto& row : ti_.rows) used += row.x * net_.activity(row.id).demand(res.id);
        if (used > res.capacity) {
          add("c.8", {res.id}, -1,
              "consumes " + std::to_string(used) + " > " + std::to_string(res.capacity));
        }
        continue;
      }
      if (!actf_) {
        capacity("c.7", res.id, res.capacity, "capacity");
      } else if (!rb) {
        capacity("Eq.16", res.id, res.capacity, "capacity");
      } else if (!res.balanced) {
        capacity("Eq.26", res.id, res.capacity, "capacity");
      } else {
        auto it = ti_.peak_usage.find(res.id);
        if (it == ti_.peak_usage.end()) {
          add("structure", {res.id}, -1, "no claimed peak usage for a balanced resource");
          continue;
        }
        const int u = it->second;
        if (u < 0) {
          add("Eq.27", {res.id}, -1, "u = " + std::to_string(u));
        } else {
          capacity("Eq.24", res.id, u, "claimed peak");
        }
        if (u > res.capacity) {
          add("Eq.25", {res.id}, -1,
              "u = " + std::to_string(u) + " > capacity " + std::to_string(res.capacity));
        }
      }
    }
  }

  void balance() {
    if (!actf_ || cfg_.objective != Objective::TimeBalance) return;
    const int big_m = cfg_.big_m > 0 ? cfg_.big_m : inst_.horizon;
    const int b = ti_.max_buffer;
    const int s = ti_.min_buffer;
    for (const auto& row : ti_.rows) {
      const Activity& a = net_.activity(row.id);
      if (a.is_dummy() || (cfg_.balance_flexible_only && a.is_fixed())) continue;
      const int worked = info(row.id).worked;
      if (worked + (1 - row.x) * big_m - row.x * a.min_duration < s) {
        add("Eq.20", {row.id}, -1, "buffer below claimed S = " + std::to_string(s));
      }
      if (b >= 0 && worked - row.x * a.min_duration > b) {
        add("Eq.21", {row.id}, -1, "buffer above claimed B = " + std::to_string(b));
      }
    }
    if (b < 0 || s < 0) {
      add("Eq.22", {}, -1, "B = " + std::to_string(b) + ", S = " + std::to_string(s));
    }
  }

  const Instance& inst_;
  const Network& net_;
  const TimeIndexedSchedule& ti_;
  const SolverConfig& cfg_;
  const bool actf_;
  std::map<int, RowInfo> info_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate_time_indexed(const Instance& inst, const TimeIndexedSchedule& ti,
                                             const SolverConfig& cfg) {
  return Checker(inst, ti, cfg).run();
}

std::vector<Violation> validate_schedule(const Instance& inst, const Schedule& sched,
                                         const SolverConfig& cfg) {
  TimeIndexedSchedule ti;
  try {
    ti = to_time_indexed(inst, sched, cfg.balance_flexible_only);
  } catch (const ModelError& e) {
    return {{"structure", {}, -1, e.what()}};
  }
  return validate_time_indexed(inst, ti, cfg);
}

Schedule prune(const Instance& inst, const Schedule& sched) {
  const auto reached =
      Checker::reach(inst.network, [&](int v) { return sched.present(v); });
  Schedule out = sched;
  for (auto& e : out.entries) {
    if (e.present && !reached.count(e.id)) e.present = false;
  }
  return out;
}

}  // namespace rcmpsp
