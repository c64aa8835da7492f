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

#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "properties.hpp"
#include "rcmpsp/generator.hpp"
#include "rcmpsp/oracle.hpp"
#include "rcmpsp/solver.hpp"

using namespace rcmpsp;
using namespace rcmpsp::test;

namespace {

const Scenario kScenarios[] = {Scenario::a(), Scenario::b(), Scenario::c(Rational(1, 2))};
const Objective kObjectives[] = {Objective::Makespan, Objective::TimeBalance,
                                 Objective::ResourceBalance};

}  // namespace

TEST_CASE("toy optima for every objective and scenario") {
  const Instance toy = make_toy_instance();
  const Rational expect[3][3] = {{Rational(12), Rational(12), Rational(8)},
                                 {Rational(0), Rational(0), Rational(0)},
                                 {Rational(1, 2), Rational(1, 2), Rational(1, 2)}};
  for (int o = 0; o < 3; ++o) {
    for (int sc = 0; sc < 3; ++sc) {
      for (Branching br : {Branching::EndsFirst, Branching::StartsFirst}) {
        for (int threads : {1, 2}) {
          SolverConfig cfg = config(kObjectives[o], kScenarios[sc]);
          cfg.branching = br;
          cfg.threads = threads;
          CAPTURE(to_string(cfg.objective));
          CAPTURE(cfg.scenario.str());
          CAPTURE(threads);
          const SolveResult r = solve(toy, cfg);
          REQUIRE(r.status == SolveStatus::Optimal);
          CHECK(*r.objective == expect[o][sc]);
          CHECK(*r.bound == expect[o][sc]);
          REQUIRE(r.schedule.has_value());
          CHECK(validate_schedule(toy, *r.schedule, cfg).empty());
          CHECK(evaluate_objective(toy, *r.schedule, cfg) == *r.objective);
        }
      }
    }
  }
}

TEST_CASE("solver agrees with the exhaustive oracle on small instances") {
  int compared = 0;
  for (const Instance& inst : tiny_instances(12)) {
    for (Objective o : kObjectives) {
      if (o == Objective::ResourceBalance && inst.balanced_resources().empty()) continue;
      for (const Scenario& sc : kScenarios) {
        const SolverConfig cfg = config(o, sc);
        SolveResult oracle;
        try {
          oracle = brute_force_solve(inst, cfg);
        } catch (const LimitsExceeded&) {
          continue;
        }
        const SolveResult bb = solve(inst, cfg);
        CAPTURE(inst.name);
        CAPTURE(to_string(o));
        CAPTURE(sc.str());
        CHECK(bb.status == oracle.status);
        if (oracle.objective) {
          REQUIRE(bb.objective.has_value());
          CHECK(*bb.objective == *oracle.objective);
        }
        ++compared;
      }
    }
  }
  CHECK(compared >= 50);
}

TEST_CASE("status mapping") {
  SUBCASE("infeasible instance") {
    // Both deliveries need r2 and must end exactly at 6.
    const Instance tight = two_lot_fixture(6);
    const SolveResult r = solve(tight, config(Objective::Makespan, Scenario::b()));
    CHECK(r.status == SolveStatus::Infeasible);
    CHECK_FALSE(r.schedule.has_value());
    CHECK_FALSE(r.bound.has_value());
  }
  SUBCASE("node limit on a larger instance") {
    GeneratorParams p;
    p.lot_count = 50;
    p.seed = 3;
    const Instance inst = generate_actf_instance(p);
    SolverConfig cfg = config(Objective::Makespan);
    cfg.node_limit = 1;
    const SolveResult r = solve(inst, cfg);
    CHECK((r.status == SolveStatus::TimeLimit || r.status == SolveStatus::Feasible));
    REQUIRE(r.bound.has_value());
    if (r.status == SolveStatus::Feasible) {
      REQUIRE(r.schedule.has_value());
      CHECK(*r.bound <= *r.objective);
      CHECK(validate_schedule(inst, *r.schedule, cfg).empty());
    } else {
      CHECK_FALSE(r.schedule.has_value());
    }
  }
  SUBCASE("config rejected") {
    SolverConfig cfg = config(Objective::TimeBalance);
    CHECK_THROWS(solve(ac_fixture(), cfg));
  }
}

TEST_CASE("property: propagation is idempotent and respects capacities") {
  const PropertyReport rep = check_propagation(tiny_instances(40), 3, 7);
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.failures.empty());
  CHECK(rep.cases >= 1000);
}

TEST_CASE("property: solutions are zero-idle and objectives stay in range") {
  const PropertyReport rep = check_solutions(tiny_instances(120));
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.failures.empty());
  CHECK(rep.cases >= 1000);
}
