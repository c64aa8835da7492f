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

// Injected-defect fixtures: small instances with a clean schedule, and for
// every constraint tag one edit of that schedule that breaks only it.

#ifndef RCMPSP_TESTS_FIXTURES_HPP_
#define RCMPSP_TESTS_FIXTURES_HPP_

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "helpers.hpp"
#include "rcmpsp/generator.hpp"
#include "rcmpsp/oracle.hpp"

namespace rcmpsp::test {

// Present activities as (id, start, end); every other activity is absent.
inline Schedule make_schedule(const Instance& inst, const std::vector<std::tuple<int, int, int>>& on) {
  Schedule s;
  for (const auto& a : inst.network.activities()) {
    ScheduledActivity e;
    e.id = a.id;
    for (const auto& [id, start, end] : on) {
      if (id == a.id) {
        e.present = true;
        e.start = start;
        e.end = end;
      }
    }
    s.entries.push_back(e);
  }
  return s;
}

// Two lots. Lot 1: OR production 1 picks 2 or 3, then delivery 4 (due 6).
// Lot 2: production 5, activity 7, delivery 6 (due `due2`). r1 is balanced.
inline Instance two_lot_fixture(int due2 = 8) {
  using K = ActivityKind;
  Network net = NetBuilder()
                    .source(0)
                    .add(1, K::Or, 2, 2, 1, {{0, 1}})
                    .add(2, K::And, 1, 4, 1, {{1, 1}})
                    .add(3, K::And, 1, 4, 1, {{1, 1}})
                    .add(4, K::Out, 1, 5, 1, {{2, 1}}, 6)
                    .add(5, K::And, 1, 1, 2, {{0, 1}})
                    .add(6, K::Out, 1, 5, 2, {{2, 1}}, due2)
                    .add(7, K::And, 1, 4, 2, {{3, 1}})
                    .sink(8)
                    .arc(0, {1, 5})
                    .alt(1, {{2}, {3}})
                    .arc(2, {4})
                    .arc(3, {4})
                    .arc(4, {8})
                    .arc(5, {7})
                    .arc(7, {6})
                    .arc(6, {8})
                    .build();
  return make_instance(std::move(net),
                       {{0, 1, false, true}, {1, 1, true, true}, {2, 1, false, true},
                        {3, 1, false, true}},
                       12);
}

inline Schedule two_lot_schedule(const Instance& inst) {
  return make_schedule(inst, {{0, 0, 0}, {1, 0, 2}, {2, 2, 4}, {4, 4, 6}, {5, 3, 4}, {7, 4, 6},
                              {6, 6, 8}, {8, 8, 8}});
}

// OR 1 with relations {2} and {3, 4}; 2, 3 and 4 all feed delivery 5.
inline Instance converging_fixture() {
  using K = ActivityKind;
  Network net = NetBuilder()
                    .source(0)
                    .add(1, K::Or, 1, 1, 1)
                    .add(2, K::And, 1, 2, 1)
                    .add(3, K::And, 1, 2, 1)
                    .add(4, K::And, 1, 2, 1)
                    .add(5, K::Out, 1, 2, 1, {}, 4)
                    .sink(6)
                    .arc(0, {1})
                    .alt(1, {{2}, {3, 4}})
                    .arc(2, {5})
                    .arc(3, {5})
                    .arc(4, {5})
                    .arc(5, {6})
                    .build();
  return make_instance(std::move(net), {{0, 1, false, true}}, 8);
}

// Fixed-duration project: OR 1 picks 2 or the chain 3 -> 7, both end in 4;
// activity 6 runs in parallel. r2 is a non-renewable budget of 3.
inline Instance ac_fixture() {
  using K = ActivityKind;
  Network net = NetBuilder()
                    .source(0)
                    .add(1, K::Or, 2, 2, 1, {{0, 1}})
                    .add(2, K::And, 3, 3, 1, {{0, 1}, {2, 1}})
                    .add(3, K::And, 2, 2, 1, {{1, 1}, {2, 2}})
                    .add(4, K::And, 1, 1, 1, {{1, 1}, {2, 2}})
                    .add(6, K::And, 2, 2, 1, {{0, 1}})
                    .add(7, K::And, 1, 1, 1)
                    .sink(5)
                    .arc(0, {1, 6})
                    .alt(1, {{2}, {3}})
                    .arc(2, {4})
                    .arc(3, {7})
                    .arc(7, {4})
                    .arc(4, {5})
                    .arc(6, {5})
                    .build();
  return make_instance(std::move(net),
                       {{0, 1, false, true}, {1, 1, false, true}, {2, 3, false, false}}, 12,
                       ProblemClass::RcpspAc);
}

inline Schedule ac_schedule(const Instance& inst) {
  return make_schedule(inst, {{0, 0, 0}, {1, 0, 2}, {2, 2, 5}, {4, 5, 6}, {6, 5, 7}, {5, 7, 7}});
}

struct DefectFixture {
  std::string tag;   // the only tag the validator may report
  std::string what;  // human-readable description of the edit
  Instance inst;
  SolverConfig cfg;
  TimeIndexedSchedule ti;
};

inline SolverConfig config(Objective o, Scenario s = Scenario::a()) {
  SolverConfig cfg;
  cfg.objective = o;
  cfg.scenario = s;
  return cfg;
}

// Moves activity `id` to [start, end) in a copy of `sched`.
inline Schedule moved(Schedule sched, int id, int start, int end) {
  ScheduledActivity* e = sched.find(id);
  e->present = true;
  e->start = start;
  e->end = end;
  return sched;
}

inline Schedule dropped(Schedule sched, std::vector<int> ids) {
  for (int id : ids) sched.find(id)->present = false;
  return sched;
}

// Clean baselines: (instance, config, schedule) that must validate clean.
struct Baseline {
  std::string what;
  Instance inst;
  SolverConfig cfg;
  Schedule sched;
};

inline std::vector<Baseline> clean_baselines() {
  const Instance f = two_lot_fixture();
  const Schedule fs = two_lot_schedule(f);
  const Instance h = ac_fixture();
  std::vector<Baseline> out;
  for (Objective o : {Objective::Makespan, Objective::TimeBalance, Objective::ResourceBalance}) {
    for (Scenario s : {Scenario::a(), Scenario::b(), Scenario::c(Rational(1, 2))}) {
      out.push_back({"two lots " + std::string(to_string(o)) + " " + s.str(), f, config(o, s), fs});
    }
  }
  const Instance g = converging_fixture();
  out.push_back({"converging relations", g, config(Objective::Makespan),
                 make_schedule(g, {{0, 0, 0}, {1, 0, 1}, {2, 1, 3}, {5, 3, 4}, {6, 4, 4}})});
  out.push_back({"fixed-duration project", h, config(Objective::Makespan), ac_schedule(h)});
  return out;
}

inline std::vector<DefectFixture> defect_fixtures() {
  std::vector<DefectFixture> out;
  const Instance f = two_lot_fixture();
  const Schedule fs = two_lot_schedule(f);
  const SolverConfig mk = config(Objective::Makespan);

  auto add = [&](std::string tag, std::string what, const Instance& inst, SolverConfig cfg,
                 const Schedule& sched, const std::function<void(TimeIndexedSchedule&)>& edit) {
    TimeIndexedSchedule ti = to_time_indexed(inst, sched, cfg.balance_flexible_only);
    if (edit) edit(ti);
    out.push_back({std::move(tag), std::move(what), inst, cfg, std::move(ti)});
  };

  // Row integrity.
  add("Eq.2", "source starts at slot 1", f, mk, fs, [](TimeIndexedSchedule& ti) {
    auto* r = ti.row(0);
    r->s[0] = r->y[0] = 0;
    r->s[1] = r->y[1] = 1;
  });
  add("Eq.3", "second start bit", f, mk, fs, [](TimeIndexedSchedule& ti) { ti.row(2)->s[10] = 1; });
  add("Eq.4", "second end bit", f, mk, fs, [](TimeIndexedSchedule& ti) { ti.row(2)->y[10] = 1; });
  add("Eq.17", "selection value 2", f, mk, fs, [](TimeIndexedSchedule& ti) { ti.row(2)->x = 2; });
  add("Eq.18", "start cell value 2", f, mk, fs, [](TimeIndexedSchedule& ti) { ti.row(2)->s[2] = 2; });
  add("Eq.12", "work bit outside the interval", f, mk, fs,
      [](TimeIndexedSchedule& ti) { ti.row(2)->w[10] = 1; });
  add("Eq.13", "fixed production shortened", f, mk, moved(fs, 1, 1, 2), nullptr);
  add("Eq.14", "fixed production lengthened", f, mk, moved(fs, 5, 2, 4), nullptr);

  // Selection.
  add("Eq.5", "OR selected without a relation", f, mk, dropped(fs, {2, 4}), nullptr);
  add("Eq.6", "tail of a route unselected", f, mk, dropped(fs, {7, 6}), nullptr);
  const Instance g = converging_fixture();
  add("Eq.7", "delivery with two selected predecessors", g, mk,
      make_schedule(g, {{0, 0, 0}, {1, 0, 1}, {3, 1, 3}, {4, 1, 3}, {5, 3, 4}, {6, 4, 4}}),
      nullptr);

  // Timing.
  add("Eq.8", "idle after an OR activity", f, mk, moved(fs, 2, 3, 4), nullptr);
  add("Eq.9", "idle after an AND activity", f, mk, moved(fs, 7, 5, 6), nullptr);
  add("Eq.10", "idle before a delivery", f, mk, moved(fs, 6, 7, 8), nullptr);
  add("Eq.11", "sink before the last delivery end", f, mk, moved(fs, 8, 7, 7), nullptr);

  // Due dates.
  add("Eq.15", "delivery before its due date", f, mk, moved(fs, 6, 6, 7), nullptr);
  const Schedule late = moved(moved(fs, 6, 6, 9), 8, 9, 9);
  add("Eq.45b", "delivery after its due date", f, config(Objective::Makespan, Scenario::b()), late,
      nullptr);
  add("Eq.45c", "delivery after its due date", f,
      config(Objective::Makespan, Scenario::c(Rational(1, 2))), late, nullptr);

  // Resources: lot 2 pulled to time 0 overloads r0 and r2 but not r1.
  const Schedule packed = moved(moved(moved(fs, 5, 0, 1), 7, 1, 4), 6, 4, 8);
  add("Eq.16", "overload", f, mk, packed, nullptr);
  const SolverConfig rb = config(Objective::ResourceBalance);
  add("Eq.26", "overload of an unbalanced resource", f, rb, packed, nullptr);
  add("Eq.24", "claimed peak below the load", f, rb, fs,
      [](TimeIndexedSchedule& ti) { ti.peak_usage[1] = 0; });
  add("Eq.25", "claimed peak above capacity", f, rb, fs,
      [](TimeIndexedSchedule& ti) { ti.peak_usage[1] = 2; });
  add("Eq.27", "negative claimed peak", f, rb, fs,
      [](TimeIndexedSchedule& ti) { ti.peak_usage[1] = -1; });

  // Time balance: buffers are 1 on 2, 4, 6, 7 and 0 on 1, 5.
  const SolverConfig tb = config(Objective::TimeBalance);
  add("Eq.20", "claimed S above a buffer", f, tb, fs,
      [](TimeIndexedSchedule& ti) { ti.min_buffer = 1; });
  add("Eq.21", "claimed B below a buffer", f, tb, fs,
      [](TimeIndexedSchedule& ti) { ti.max_buffer = 0; });
  add("Eq.22", "negative claimed B", f, tb, fs,
      [](TimeIndexedSchedule& ti) { ti.max_buffer = -1; });

  // Fixed-duration class.
  const Instance h = ac_fixture();
  const Schedule hs = ac_schedule(h);
  add("c.6", "successor starts before its predecessor ends", h, mk, moved(hs, 4, 4, 5), nullptr);
  add("c.7", "overload", h, mk, moved(hs, 6, 0, 2), nullptr);
  add("c.8", "budget exceeded on the other relation", h, mk,
      make_schedule(h, {{0, 0, 0}, {1, 0, 2}, {3, 2, 4}, {7, 4, 5}, {4, 5, 6}, {6, 6, 8},
                        {5, 8, 8}}),
      nullptr);
  add("c.11", "activity of the unchosen relation selected", h, mk,
      moved(hs, 7, 4, 5), nullptr);
  return out;
}

// Small generated ACTF instance (at most 3 lots, 12 activities, T <= 30)
// that the exhaustive oracle can solve; nullopt when `seed` gives a larger one.
inline std::optional<Instance> tiny_instance(std::uint64_t seed) {
  GeneratorParams p;
  p.seed = seed;
  p.lot_count = 2 + static_cast<int>(seed % 2);
  p.max_routes = 2 + static_cast<int>(seed % 2);
  p.pattern = seed % 3 == 0 ? Pattern::Random : Pattern::RealWorld;
  p.route_templates = {{kCooling}, {kProcessing, kStoraging}, {kRelocation}, {kStoraging}};
  if (seed % 4 == 1) p.route_templates = {{kCooling}, {kStoraging}};
  p.min_duration_range = {1, 3};
  p.slack_range = {1, 3};
  p.resource_count = 3;
  p.demand_range = {1, 3};
  p.resource_strength = Rational(static_cast<std::int64_t>(seed % 4), 4);
  Instance inst = generate_actf_instance(p);
  int acts = 0;
  for (const auto& a : inst.network.activities()) acts += a.is_dummy() ? 0 : 1;
  if (acts > 12 || inst.horizon > 30) return std::nullopt;
  return inst;
}

inline std::set<std::string> tags_of(const std::vector<Violation>& vs) {
  std::set<std::string> out;
  for (const auto& v : vs) out.insert(v.tag);
  return out;
}

}  // namespace rcmpsp::test

#endif  // RCMPSP_TESTS_FIXTURES_HPP_
