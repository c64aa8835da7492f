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

#include <set>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "rcmpsp/generator.hpp"
#include "rcmpsp/oracle.hpp"

using namespace rcmpsp;
using namespace rcmpsp::test;

TEST_CASE("fixture baselines validate clean") {
  for (const auto& b : clean_baselines()) {
    CAPTURE(b.what);
    const auto vs = validate_schedule(b.inst, b.sched, b.cfg);
    for (const auto& v : vs) MESSAGE(v.text());
    CHECK(vs.empty());
  }
}

TEST_CASE("each injected defect is reported under exactly its tag") {
  for (const auto& f : defect_fixtures()) {
    CAPTURE(f.tag);
    CAPTURE(f.what);
    const auto vs = validate_time_indexed(f.inst, f.ti, f.cfg);
    for (const auto& v : vs) MESSAGE(v.text());
    CHECK(tags_of(vs) == std::set<std::string>{f.tag});
  }
}

TEST_CASE("defect fixtures cover every validator tag") {
  std::set<std::string> covered;
  for (const auto& f : defect_fixtures()) covered.insert(f.tag);
  for (const auto& tag : validator_tags()) {
    CAPTURE(tag);
    CHECK(covered.count(tag) == 1);
  }
  CHECK(covered.size() == validator_tags().size());
}

TEST_CASE("time-indexed round trip preserves the schedule") {
  const Instance f = two_lot_fixture();
  const Schedule s = two_lot_schedule(f);
  const Schedule back = from_time_indexed(to_time_indexed(f, s));
  for (const auto& e : s.entries) {
    const auto* b = back.find(e.id);
    REQUIRE(b != nullptr);
    CHECK(b->present == e.present);
    if (e.present) {
      CHECK(b->start == e.start);
      CHECK(b->end == e.end);
    }
  }
}

TEST_CASE("to_time_indexed rejects times outside the horizon") {
  const Instance f = two_lot_fixture();
  CHECK_THROWS(to_time_indexed(f, moved(two_lot_schedule(f), 6, 6, 13)));
  CHECK_THROWS(to_time_indexed(f, moved(two_lot_schedule(f), 6, 6, 5)));
}

TEST_CASE("prune drops activities outside the selected relations") {
  const Instance h = ac_fixture();
  const Schedule stray = moved(ac_schedule(h), 7, 4, 5);
  SolverConfig cfg;
  CHECK_FALSE(validate_schedule(h, stray, cfg).empty());
  const Schedule pruned = prune(h, stray);
  CHECK_FALSE(pruned.present(7));
  CHECK(pruned.present(2));
  CHECK(validate_schedule(h, pruned, cfg).empty());
}

TEST_CASE("oracle optima on the toy instance") {
  const Instance toy = make_toy_instance();
  struct Row {
    Objective o;
    Scenario s;
    Rational value;
  };
  const Row rows[] = {
      {Objective::Makespan, Scenario::a(), Rational(12)},
      {Objective::Makespan, Scenario::b(), Rational(12)},
      {Objective::Makespan, Scenario::c(Rational(1, 2)), Rational(8)},
      {Objective::TimeBalance, Scenario::a(), Rational(0)},
      {Objective::TimeBalance, Scenario::b(), Rational(0)},
      {Objective::TimeBalance, Scenario::c(Rational(1, 2)), Rational(0)},
      {Objective::ResourceBalance, Scenario::a(), Rational(1, 2)},
      {Objective::ResourceBalance, Scenario::b(), Rational(1, 2)},
      {Objective::ResourceBalance, Scenario::c(Rational(1, 2)), Rational(1, 2)},
  };
  for (const auto& r : rows) {
    SolverConfig cfg;
    cfg.objective = r.o;
    cfg.scenario = r.s;
    CAPTURE(to_string(r.o));
    CAPTURE(r.s.str());
    const SolveResult res = brute_force_solve(toy, cfg);
    REQUIRE(res.status == SolveStatus::Optimal);
    REQUIRE(res.objective.has_value());
    CHECK(*res.objective == r.value);
    REQUIRE(res.schedule.has_value());
    CHECK(validate_schedule(toy, *res.schedule, cfg).empty());
  }
}

TEST_CASE("oracle reports infeasibility and its limits") {
  const Instance f = two_lot_fixture();
  SolverConfig cfg;
  cfg.objective = Objective::Makespan;
  cfg.scenario = Scenario::a();
  const SolveResult ok = brute_force_solve(f, cfg);
  CHECK(ok.status == SolveStatus::Optimal);

  // Both deliveries need r2 and must end exactly at 6.
  SolverConfig exact = cfg;
  exact.scenario = Scenario::b();
  const SolveResult none = brute_force_solve(two_lot_fixture(6), exact);
  CHECK(none.status == SolveStatus::Infeasible);
  CHECK_FALSE(none.schedule.has_value());

  OracleLimits small;
  small.max_space = 1.0;
  CHECK_THROWS_AS(brute_force_solve(f, cfg, small), LimitsExceeded);
}
