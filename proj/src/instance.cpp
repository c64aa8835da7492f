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

#include "rcmpsp/instance.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace rcmpsp {

std::string_view to_string(Pattern p) { return p == Pattern::RealWorld ? "rw" : "rand"; }

std::string_view to_string(ProblemClass c) {
  switch (c) {
    case ProblemClass::RcpspAc:
      return "RCPSP_AC";
    case ProblemClass::RcmpspAc:
      return "RCMPSP_AC";
    case ProblemClass::RcmpspActf:
      return "RCMPSP_ACTF";
  }
  return "?";
}

Pattern parse_pattern(std::string_view text) {
  if (text == "rw") return Pattern::RealWorld;
  if (text == "rand") return Pattern::Random;
  throw ModelError("unknown demand pattern: " + std::string(text));
}

ProblemClass parse_problem_class(std::string_view text) {
  for (auto c : {ProblemClass::RcpspAc, ProblemClass::RcmpspAc, ProblemClass::RcmpspActf}) {
    if (to_string(c) == text) return c;
  }
  throw ModelError("unknown problem class: " + std::string(text));
}

const Resource& Instance::resource(int id) const {
  for (const auto& r : resources) {
    if (r.id == id) return r;
  }
  throw ModelError("unknown resource id " + std::to_string(id));
}

std::vector<int> Instance::balanced_resources() const {
  std::vector<int> out;
  for (const auto& r : resources) {
    if (r.balanced) out.push_back(r.id);
  }
  return out;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  for (const auto& d : validate_network(inst.network)) out.push_back(d.text());
  if (inst.horizon <= 0) out.push_back("horizon: " + std::to_string(inst.horizon));
  std::set<int> ids;
  for (const auto& r : inst.resources) {
    if (!ids.insert(r.id).second) out.push_back("duplicate resource: " + std::to_string(r.id));
    if (r.capacity < 1) out.push_back("capacity: " + std::to_string(r.id));
    if (r.balanced && !r.renewable) out.push_back("balanced non-renewable: " + std::to_string(r.id));
  }
  for (const auto& a : inst.network.activities()) {
    for (const auto& [r, q] : a.demands) {
      if (!ids.count(r)) out.push_back("unknown resource: " + std::to_string(a.id) + "," +
                                       std::to_string(r));
    }
    if (a.due_date && *a.due_date > inst.horizon) {
      out.push_back("due after horizon: " + std::to_string(a.id));
    }
  }
  bool actf = inst.problem_class == ProblemClass::RcmpspActf;
  if (actf) {
    for (int lot : inst.network.lots()) {
      auto t = inst.network.lot_terminal(lot);
      if (!t || inst.network.activity(*t).kind != ActivityKind::Out) {
        out.push_back("lot without delivery: " + std::to_string(lot));
      }
    }
    for (const auto& r : inst.resources) {
      if (!r.renewable) out.push_back("non-renewable in RCMPSP_ACTF: " + std::to_string(r.id));
    }
  }
  return out;
}

Rational resource_factor(const Instance& inst) {
  std::vector<int> renewable;
  for (const auto& r : inst.resources) {
    if (r.renewable) renewable.push_back(r.id);
  }
  std::int64_t activities = 0;
  std::int64_t used = 0;
  for (const auto& a : inst.network.activities()) {
    if (a.is_dummy()) continue;
    ++activities;
    for (int r : renewable) used += a.demand(r) > 0;
  }
  if (activities == 0) throw ModelError("resource factor needs a non-dummy activity");
  if (renewable.empty()) return Rational(0);
  return Rational(used, activities * static_cast<std::int64_t>(renewable.size()));
}

int earliest_completion(const Network& net, int lot) {
  int best = std::numeric_limits<int>::max();
  for (const auto& route : enumerate_routes(net, lot)) {
    std::set<int> on(route.begin(), route.end());
    std::map<int, int> finish;
    int latest = 0;
    // Routes are listed in topological order.
    for (int v : route) {
      int start = 0;
      for (int p : net.predecessors(v)) {
        if (on.count(p)) start = std::max(start, finish[p]);
      }
      finish[v] = start + net.activity(v).min_duration;
      latest = std::max(latest, finish[v]);
    }
    best = std::min(best, latest);
  }
  return best;
}

}  // namespace rcmpsp
