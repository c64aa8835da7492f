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

#include <doctest.h>

#include "helpers.hpp"
#include "rcmpsp/generator.hpp"
#include "rcmpsp/instance.hpp"
#include "rcmpsp/io.hpp"
#include "rcmpsp/oracle.hpp"
#include "rcmpsp/solver.hpp"

using namespace rcmpsp;
using rcmpsp::test::NetBuilder;

namespace {

constexpr auto kAnd = ActivityKind::And;
constexpr auto kOr = ActivityKind::Or;
constexpr auto kOut = ActivityKind::Out;

int non_dummy_count(const Network& net) {
  int n = 0;
  for (const auto& a : net.activities()) n += !a.is_dummy();
  return n;
}

int delivery_due(const Network& net, int lot) {
  for (int id : net.lot_members(lot)) {
    const Activity& a = net.activity(id);
    if (a.kind == kOut) return *a.due_date;
  }
  FAIL("lot without delivery");
  return 0;
}

}  // namespace

TEST_CASE("resource factor") {
  GeneratorParams p;
  p.lot_count = 5;
  p.pattern = Pattern::Random;
  CHECK(resource_factor(generate_actf_instance(p)) == Rational(1));
  p.pattern = Pattern::RealWorld;
  CHECK(resource_factor(generate_actf_instance(p)) == Rational(1, 9));

  Network net = NetBuilder()
                    .source(0)
                    .add(1, kAnd, 1, 1, 1)
                    .add(2, kOut, 1, 1, 1, {}, 5)
                    .sink(3)
                    .arc(0, {1})
                    .arc(1, {2})
                    .arc(2, {3})
                    .build();
  CHECK(resource_factor(test::make_instance(net, {{0, 1, false, true}}, 10)) == Rational(0));
}

TEST_CASE("earliest completion") {
  SUBCASE("single chain") {
    Network net = NetBuilder()
                      .source(0)
                      .add(1, kAnd, 2, 5, 1)
                      .add(2, kAnd, 3, 5, 1)
                      .add(3, kOut, 1, 5, 1, {}, 20)
                      .sink(4)
                      .arc(0, {1})
                      .arc(1, {2})
                      .arc(2, {3})
                      .arc(3, {4})
                      .build();
    CHECK(earliest_completion(net, 1) == 6);
  }
  SUBCASE("cheapest of two routes") {
    Network net = NetBuilder()
                      .source(0)
                      .add(1, kOr, 1, 1, 1)
                      .add(2, kAnd, 4, 4, 1)
                      .add(3, kAnd, 2, 2, 1)
                      .add(4, kOut, 1, 1, 1, {}, 20)
                      .sink(5)
                      .arc(0, {1})
                      .alt(1, {{2}, {3}})
                      .arc(2, {4})
                      .arc(3, {4})
                      .arc(4, {5})
                      .build();
    CHECK(earliest_completion(net, 1) == 4);
  }
  SUBCASE("zero-length delivery") {
    Network net = NetBuilder()
                      .source(0)
                      .add(1, kOut, 0, 0, 1, {}, 0)
                      .sink(2)
                      .arc(0, {1})
                      .arc(1, {2})
                      .build();
    CHECK(earliest_completion(net, 1) == 0);
  }
}

TEST_CASE("due dates") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto d = generate_due_dates({{1, 10}, {2, 0}}, rng);
    CHECK(d.at(1) >= 20);
    CHECK(d.at(1) <= 30);
    CHECK(d.at(2) == 0);
  }
  Rng first(42), second(42);
  const auto golden = generate_due_dates({{1, 5}, {2, 8}}, first);
  CHECK(golden == std::map<int, int>{{1, 10}, {2, 21}});
  CHECK(generate_due_dates({{1, 5}, {2, 8}}, second) == golden);
}

TEST_CASE("maximum durations") {
  Network net = NetBuilder()
                    .source(0)
                    .add(1, kOr, 3, 3, 1)
                    .add(2, kOut, 1, 1, 1, {}, 20)
                    .sink(3)
                    .arc(0, {1})
                    .arc(1, {2})
                    .arc(2, {3})
                    .build();
  auto b = generate_max_durations(net, {2}, {{1, 20}}, {{1, 10}}, {{1, 15}});
  CHECK(b.at(2) == 25);
  CHECK(b.at(1) == 3);
  b = generate_max_durations(net, {2}, {{1, 24}}, {{1, 12}}, {{1, 10}});
  CHECK(b.at(2) == 22);
}

TEST_CASE("capacities") {
  const CapacityBounds bounds{4, 20};
  CHECK(capacity_from_bounds(bounds, Rational(1, 2), Rational(3), Pattern::Random, false) == 22);
  CHECK(capacity_from_bounds(bounds, Rational(0), Rational(3), Pattern::Random, false) == 12);
  CHECK(capacity_from_bounds(bounds, Rational(1), Rational(3), Pattern::Random, false) == 32);
  CHECK(capacity_from_bounds({5, 30}, Rational(1, 4), Rational(2), Pattern::RealWorld, false) ==
        10);
  CHECK(capacity_from_bounds({4, 20}, Rational(1, 2), Rational(3), Pattern::RealWorld, true) ==
        22);
  CHECK_THROWS_AS(
      capacity_from_bounds({0, 0}, Rational(1, 2), Rational(3), Pattern::Random, false),
      ModelError);
  // Fractional L_par rounds the lower capacity up.
  CHECK(capacity_from_bounds({3, 0}, Rational(0), Rational(4, 3), Pattern::Random, false) == 4);
}

TEST_CASE("parallel lot estimate") {
  CHECK(parallel_lot_estimate({0, 0}, {10, 10}) == Rational(2));
  CHECK(parallel_lot_estimate({0, 0, 0}, {10, 20, 30}) == Rational(2));
  CHECK(parallel_lot_estimate({0, 10}, {10, 20}) == Rational(1));
  CHECK_THROWS_AS(parallel_lot_estimate({}, {}), std::invalid_argument);
}

TEST_CASE("parameter checks") {
  GeneratorParams p;
  p.lot_count = 0;
  CHECK_THROWS_AS(generate_actf_instance(p), std::invalid_argument);
  p = GeneratorParams{};
  p.slack_range = {20, 10};
  CHECK_THROWS_AS(generate_actf_instance(p), std::invalid_argument);
  p = GeneratorParams{};
  p.route_templates.clear();
  CHECK_THROWS_AS(generate_actf_instance(p), std::invalid_argument);
}

TEST_CASE("generated ACTF instances") {
  for (Pattern pattern : {Pattern::RealWorld, Pattern::Random}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      GeneratorParams p;
      p.pattern = pattern;
      p.seed = seed;
      p.resource_strength = Rational(static_cast<std::int64_t>(seed % 4) + 1, 4);
      const Instance inst = generate_actf_instance(p);
      CAPTURE(inst.name);
      CHECK(validate_instance(inst).empty());
      CHECK(inst.network.lot_count() == 10);
      CHECK(resource_factor(inst) ==
            (pattern == Pattern::Random ? Rational(1)
                                        : Rational(1, static_cast<int>(inst.resources.size()))));
      for (int lot : inst.network.lots()) {
        const int t = earliest_completion(inst.network, lot);
        const int d = delivery_due(inst.network, lot);
        CHECK(d >= 2 * t);
        CHECK(d <= 3 * t);
        CHECK(d <= inst.horizon);
        const auto routes = enumerate_routes(inst.network, lot);
        CHECK(routes.size() >= 1);
        CHECK(routes.size() <= 3);
      }
      for (const auto& a : inst.network.activities()) {
        CHECK(a.min_duration <= a.max_duration);
        if (a.is_dummy()) continue;
        CHECK(a.min_duration >= 1);
        CHECK(a.min_duration <= 4);
        if (pattern == Pattern::RealWorld) {
          REQUIRE(a.demands.size() == 1);
          CHECK(a.demands.begin()->second == 1);
        } else {
          CHECK(a.demands.size() == inst.resources.size());
          for (const auto& [r, q] : a.demands) CHECK((q >= 1 && q <= 9));
        }
      }
      CHECK(dump_instance(generate_actf_instance(p)) == dump_instance(inst));
    }
  }
}

TEST_CASE("generated instance regression") {
  GeneratorParams p;
  p.seed = 42;
  const Instance inst = generate_actf_instance(p);
  CHECK(inst.name == "actf_L10_rw_RS0.25_s42");
  CHECK(instance_fingerprint(inst) == "31e5f3167ae88678");
  CHECK(inst.horizon == 100);
}

TEST_CASE("small generated instances are feasible in scenario a") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GeneratorParams p;
    p.lot_count = 2;
    p.seed = seed;
    p.max_routes = 2;
    p.route_templates = {{1}, {2, 4}, {3}};
    p.min_duration_range = {1, 2};
    p.slack_range = {1, 2};
    p.resource_count = 3;
    p.demand_range = {1, 2};
    p.pattern = seed % 2 ? Pattern::RealWorld : Pattern::Random;
    const Instance inst = generate_actf_instance(p);
    SolverConfig cfg;
    try {
      const auto r = brute_force_solve(inst, cfg);
      CHECK(r.status == SolveStatus::Optimal);
      ++checked;
    } catch (const LimitsExceeded&) {
    }
    CHECK(solve(inst, cfg).status == SolveStatus::Optimal);
  }
  CHECK(checked >= 20);
}

TEST_CASE("AC instances") {
  const Instance one = generate_ac_instance(1, AcMode::Single, 1);
  CHECK(non_dummy_count(one.network) == 30);
  CHECK(one.network.activities().size() == 32);
  CHECK(one.problem_class == ProblemClass::RcpspAc);
  CHECK(validate_instance(one).empty());
  const Instance five = generate_ac_instance(5, AcMode::Multi, 1);
  CHECK(non_dummy_count(five.network) == 150);
  CHECK(five.problem_class == ProblemClass::RcmpspAc);
  CHECK(validate_instance(five).empty());
  const Instance two = generate_ac_instance(2, AcMode::Multi, 1);
  CHECK(two.network.successors(two.network.source_id()).size() == 2);
  // Both modes share data, so the parallel arrangement is the tighter one.
  const Instance two_single = generate_ac_instance(2, AcMode::Single, 1);
  REQUIRE(two.resources.size() == two_single.resources.size());
  for (std::size_t i = 0; i < two.resources.size(); ++i) {
    CHECK(two.resources[i].capacity == two_single.resources[i].capacity);
  }
  int or_nodes = 0;
  for (const auto& a : one.network.activities()) or_nodes += a.kind == kOr;
  CHECK(or_nodes == 5);
}

TEST_CASE("case-study instance") {
  const Instance inst = generate_case_study_instance(1);
  CHECK(validate_instance(inst).empty());
  CHECK(inst.network.lot_count() == 50);
  CHECK(inst.horizon == 4088);
  std::vector<int> caps;
  for (const auto& r : inst.resources) caps.push_back(r.capacity);
  CHECK(caps == std::vector<int>{10, 10, 30, 10, 50, 240, 220, 80});
  CHECK(inst.balanced_resources() == std::vector<int>{6, 8});
  CHECK(dump_instance(generate_case_study_instance(1)) == dump_instance(inst));
}

TEST_CASE("instance validation") {
  Instance inst = make_toy_instance();
  CHECK(validate_instance(inst).empty());
  inst.horizon = 5;
  CHECK_FALSE(validate_instance(inst).empty());
  inst = make_toy_instance();
  inst.resources.pop_back();
  CHECK_FALSE(validate_instance(inst).empty());
}

TEST_CASE("instance files") {
  const Instance toy = make_toy_instance();
  const std::string text = dump_instance(toy);
  CHECK(text.find("rcmpsp-instance/1") != std::string::npos);
  const Instance back = parse_instance(text);
  CHECK(dump_instance(back) == text);
  CHECK(instance_fingerprint(back) == instance_fingerprint(toy));
  CHECK(instance_fingerprint(toy) == "759eeaf5f8dba64d");

  const Instance gen = generate_ac_instance(2, AcMode::Multi, 4);
  CHECK(dump_instance(parse_instance(dump_instance(gen))) == dump_instance(gen));

  CHECK_THROWS_AS(parse_instance("{}"), ModelError);
  CHECK_THROWS_AS(parse_instance("not json"), ModelError);
  std::string wrong = text;
  wrong.replace(wrong.find("rcmpsp-instance/1"), 17, "rcmpsp-instance/9");
  CHECK_THROWS_AS(parse_instance(wrong), ModelError);
}

TEST_CASE("schedule files") {
  const Instance toy = make_toy_instance();
  const SolveResult r = solve(toy, SolverConfig{});
  REQUIRE(r.schedule);
  const std::string text = dump_schedule(toy, *r.schedule);
  const ScheduleFile back = parse_schedule(text);
  CHECK(back.instance_name == "toy");
  CHECK(back.fingerprint == instance_fingerprint(toy));
  REQUIRE(back.schedule.entries.size() == r.schedule->entries.size());
  for (std::size_t i = 0; i < back.schedule.entries.size(); ++i) {
    const auto& x = back.schedule.entries[i];
    const auto& y = r.schedule->entries[i];
    CHECK(x.id == y.id);
    CHECK(x.present == y.present);
    CHECK(x.start == y.start);
    CHECK(x.end == y.end);
  }
  CHECK_THROWS_AS(parse_schedule(dump_instance(toy)), ModelError);
}
