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

#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "rcmpsp/report.hpp"
#include "rcmpsp/solver.hpp"

using namespace rcmpsp;
using namespace rcmpsp::test;

namespace {

int count(const std::string& text, const std::string& what) {
  int n = 0;
  for (auto pos = text.find(what); pos != std::string::npos; pos = text.find(what, pos + 1)) ++n;
  return n;
}

RunRecord record(std::string instance, std::string solver, SolveStatus status,
                 std::optional<Rational> value, double runtime) {
  RunRecord r;
  r.instance = std::move(instance);
  r.solver = std::move(solver);
  r.scenario = "a";
  r.status = status;
  r.value = value;
  r.bound = value;
  r.runtime_s = runtime;
  return r;
}

}  // namespace

TEST_CASE("text gantt chart of the two-lot fixture") {
  const Instance f = two_lot_fixture();
  CHECK(gantt_text(f, two_lot_schedule(f)) ==
        "end 8, 1 column = 1 time unit\n"
        "row     id      start    end  |\n"
        "lot 1   1           0      2  |##\n"
        "lot 1   2           2      4  |  ##\n"
        "lot 1   4           4      6  |    ##\n"
        "lot 2   5           3      4  |   #\n"
        "lot 2   7           4      6  |    ##\n"
        "lot 2   6           6      8  |      ##\n");
}

TEST_CASE("svg gantt chart has one lane per lot") {
  const Instance f = two_lot_fixture();
  const std::string svg = gantt_svg(f, two_lot_schedule(f));
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count(svg, "<rect") == 6);
  CHECK(count(svg, ">lot 1<") == 1);
  CHECK(count(svg, ">lot 2<") == 1);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("gantt charts skip absent activities") {
  const Instance f = two_lot_fixture();
  const Schedule partial = dropped(two_lot_schedule(f), {7, 6});
  const std::string text = gantt_text(f, partial);
  CHECK(count(text, "lot 2") == 1);
  CHECK(count(gantt_svg(f, partial), "<rect") == 4);
  CHECK(gantt_text(f, make_schedule(f, {})) == "(no scheduled activities)\n");
}

TEST_CASE("gantt chart of a solved toy schedule") {
  const Instance toy = make_toy_instance();
  const SolveResult r = solve(toy, config(Objective::Makespan));
  REQUIRE(r.schedule.has_value());
  const std::string svg = gantt_svg(toy, *r.schedule);
  CHECK(count(svg, ">lot 1<") == 1);
  CHECK(count(svg, ">lot 2<") == 1);
  CHECK(gantt_text(toy, *r.schedule).rfind("end 12,", 0) == 0);
}

TEST_CASE("run records as csv and json") {
  const Instance f = two_lot_fixture();
  const SolverConfig cfg = config(Objective::Makespan);
  const RunRecord rec = make_record(f, "bb", cfg, solve(f, cfg));
  CHECK(records_csv_header() ==
        "instance,solver,class,objective,scenario,status,value,bound,runtime_s,nodes,seed");
  const std::string csv = records_csv({rec});
  CHECK(csv.rfind(records_csv_header() + "\n", 0) == 0);
  CHECK(csv.find("\nfixture,bb,RCMPSP_ACTF,makespan,a,OPTIMAL,8,8,") != std::string::npos);
  CHECK(count(csv, "\n") == 2);

  const auto j = nlohmann::json::parse(records_json({rec}));
  REQUIRE(j.size() == 1);
  CHECK(j[0]["status"] == "OPTIMAL");
  CHECK(j[0]["value"] == "8");
  CHECK(j[0]["scenario"] == "a");
}

TEST_CASE("instance groups drop the seed suffix") {
  CHECK(instance_group("actf_L10_rw_RS0.25_s3") == "actf_L10_rw_RS0.25");
  CHECK(instance_group("actf_L10_rw_RS0.25_s12") == "actf_L10_rw_RS0.25");
  CHECK(instance_group("toy") == "toy");
  CHECK(instance_group("a_sx") == "a_sx");
}

TEST_CASE("aggregation counts and agreement") {
  const std::vector<RunRecord> runs = {
      record("g_s1", "bb", SolveStatus::Optimal, Rational(10), 1.0),
      record("g_s2", "bb", SolveStatus::Feasible, Rational(20), 3.0),
      record("g_s1", "oracle", SolveStatus::Optimal, Rational(10), 2.0),
      record("g_s2", "oracle", SolveStatus::TimeLimit, std::nullopt, 4.0),
  };
  const auto rows = aggregate(runs);
  REQUIRE(rows.size() == 2);
  const AggregateRow& bb = rows[0].solver == "bb" ? rows[0] : rows[1];
  const AggregateRow& oracle = rows[0].solver == "bb" ? rows[1] : rows[0];
  CHECK(bb.group == "g");
  CHECK(bb.instances == 2);
  CHECK(bb.optimal == 1);
  CHECK(bb.feasible == 1);
  CHECK(*bb.mean_value == doctest::Approx(15.0));
  CHECK(bb.mean_runtime_s == doctest::Approx(2.0));
  CHECK(oracle.optimal == 1);
  CHECK(oracle.feasible == 0);
  CHECK(*oracle.mean_value == doctest::Approx(10.0));
  REQUIRE(bb.agreement.has_value());
  CHECK(*bb.agreement);

  auto disagree = runs;
  disagree[2].value = Rational(11);
  for (const auto& row : aggregate(disagree)) CHECK_FALSE(*row.agreement);

  const auto single = aggregate({runs[0], runs[1]});
  REQUIRE(single.size() == 1);
  CHECK_FALSE(single[0].agreement.has_value());
  const std::string csv = aggregate_csv(single);
  CHECK(csv.rfind("group,solver,objective,scenario,instances,mean_value,mean_bound,"
                  "mean_runtime_s,opt,feasible,agreement\n",
                  0) == 0);
  CHECK(csv.find("\ng,bb,makespan,a,2,15.000,15.000,2.000,1,1,\n") != std::string::npos);
}
