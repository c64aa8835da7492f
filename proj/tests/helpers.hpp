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

// Small builders shared by the unit tests.

#ifndef RCMPSP_TESTS_HELPERS_HPP_
#define RCMPSP_TESTS_HELPERS_HPP_

#include <map>
#include <optional>
#include <vector>

#include "rcmpsp/instance.hpp"
#include "rcmpsp/network.hpp"

namespace rcmpsp::test {

class NetBuilder {
 public:
  NetBuilder& source(int id) { return add(id, ActivityKind::Source, 0, 0, std::nullopt); }
  NetBuilder& sink(int id) { return add(id, ActivityKind::Sink, 0, 0, std::nullopt); }
  NetBuilder& add(int id, ActivityKind kind, int a, int b, std::optional<int> lot,
                  std::map<int, int> demands = {}, std::optional<int> due = std::nullopt) {
    Activity act;
    act.id = id;
    act.kind = kind;
    act.min_duration = a;
    act.max_duration = b;
    act.lot = lot;
    act.demands = std::move(demands);
    act.due_date = due;
    acts_.push_back(act);
    if (kind == ActivityKind::Source) source_ = id;
    if (kind == ActivityKind::Sink) sink_ = id;
    return *this;
  }
  // AND-style relation: one bundle holding all successors.
  NetBuilder& arc(int from, std::vector<int> to) {
    rel_[from].push_back(std::move(to));
    return *this;
  }
  // OR-style relations: one bundle per alternative.
  NetBuilder& alt(int from, std::vector<std::vector<int>> bundles) {
    for (auto& b : bundles) rel_[from].push_back(std::move(b));
    return *this;
  }
  Network build() const { return Network(acts_, rel_, source_, sink_); }

 private:
  std::vector<Activity> acts_;
  std::map<int, std::vector<Bundle>> rel_;
  int source_ = 0;
  int sink_ = 0;
};

inline Instance make_instance(Network net, std::vector<Resource> resources, int horizon,
                              ProblemClass cls = ProblemClass::RcmpspActf) {
  Instance inst;
  inst.name = "fixture";
  inst.network = std::move(net);
  inst.resources = std::move(resources);
  inst.horizon = horizon;
  inst.problem_class = cls;
  return inst;
}

}  // namespace rcmpsp::test

#endif  // RCMPSP_TESTS_HELPERS_HPP_
