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

#include "rcmpsp/network.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

#include "route_expander.hpp"

namespace rcmpsp {

namespace {

constexpr std::pair<ActivityKind, std::string_view> kKindNames[] = {
    {ActivityKind::And, "AND"},         {ActivityKind::Or, "OR"},
    {ActivityKind::Out, "OUT"},         {ActivityKind::Source, "SOURCE"},
    {ActivityKind::Sink, "SINK"},       {ActivityKind::MetaAlt, "META_ALT"},
    {ActivityKind::MetaSpan, "META_SPAN"},
};

const std::vector<int> kNoIds;
const std::vector<Bundle> kNoBundles;

std::set<int> reach_from(const Network& net, const std::vector<int>& starts) {
  std::set<int> seen;
  std::vector<int> stack(starts.begin(), starts.end());
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (!seen.insert(v).second) continue;
    for (int w : net.successors(v)) stack.push_back(w);
  }
  return seen;
}

}  // namespace

std::string_view to_string(ActivityKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

ActivityKind parse_activity_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  throw ModelError("unknown activity kind: " + std::string(text));
}

Network::Network(std::vector<Activity> activities, std::map<int, std::vector<Bundle>> relations,
                 int source_id, int sink_id)
    : activities_(std::move(activities)),
      relations_(std::move(relations)),
      source_id_(source_id),
      sink_id_(sink_id) {
  std::sort(activities_.begin(), activities_.end(),
            [](const Activity& a, const Activity& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < activities_.size(); ++i) {
    if (!index_.emplace(activities_[i].id, static_cast<int>(i)).second) {
      throw ModelError("duplicate activity id " + std::to_string(activities_[i].id));
    }
  }
  for (const auto& [from, bundles] : relations_) {
    if (!contains(from)) throw ModelError("relation from unknown activity " + std::to_string(from));
    auto& out = succ_[from];
    for (const auto& bundle : bundles) {
      for (int to : bundle) {
        if (!contains(to)) throw ModelError("relation to unknown activity " + std::to_string(to));
        if (std::find(out.begin(), out.end(), to) == out.end()) {
          out.push_back(to);
          pred_[to].push_back(from);
        }
      }
    }
  }
  for (auto& [id, list] : succ_) std::sort(list.begin(), list.end());
  for (auto& [id, list] : pred_) std::sort(list.begin(), list.end());
}

const Activity& Network::activity(int id) const { return activities_.at(index_of(id)); }

int Network::index_of(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ModelError("unknown activity id " + std::to_string(id));
  return it->second;
}

const std::vector<Bundle>& Network::bundles(int id) const {
  auto it = relations_.find(id);
  return it == relations_.end() ? kNoBundles : it->second;
}

const std::vector<int>& Network::successors(int id) const {
  auto it = succ_.find(id);
  return it == succ_.end() ? kNoIds : it->second;
}

const std::vector<int>& Network::predecessors(int id) const {
  auto it = pred_.find(id);
  return it == pred_.end() ? kNoIds : it->second;
}

std::vector<std::pair<int, int>> Network::arcs() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& a : activities_) {
    for (int j : successors(a.id)) out.emplace_back(a.id, j);
  }
  return out;
}

std::vector<int> Network::delivery_set() const {
  std::vector<int> out;
  for (const auto& a : activities_) {
    if (a.kind == ActivityKind::Out) out.push_back(a.id);
  }
  return out;
}

std::vector<int> Network::lots() const {
  std::set<int> lots;
  for (const auto& a : activities_) {
    if (a.lot) lots.insert(*a.lot);
  }
  return {lots.begin(), lots.end()};
}

std::vector<int> Network::lot_members(int lot) const {
  std::vector<int> out;
  for (const auto& a : activities_) {
    if (a.lot == lot) out.push_back(a.id);
  }
  return out;
}

std::optional<int> Network::lot_entry(int lot) const {
  std::optional<int> entry;
  for (int id : lot_members(lot)) {
    bool inner_pred = false;
    for (int p : predecessors(id)) inner_pred |= activity(p).lot == lot;
    if (!inner_pred) {
      if (entry) return std::nullopt;
      entry = id;
    }
  }
  return entry;
}

std::optional<int> Network::lot_terminal(int lot) const {
  std::optional<int> terminal;
  auto members = lot_members(lot);
  for (int id : members) {
    if (activity(id).kind == ActivityKind::Out) {
      if (terminal) return std::nullopt;
      terminal = id;
    }
  }
  if (terminal) return terminal;
  for (int id : members) {
    bool inner_succ = false;
    for (int s : successors(id)) inner_succ |= activity(s).lot == lot;
    if (!inner_succ) {
      if (terminal) return std::nullopt;
      terminal = id;
    }
  }
  return terminal;
}

std::vector<int> Network::topological_order() const {
  std::map<int, int> indegree;
  for (const auto& a : activities_) indegree[a.id] = static_cast<int>(predecessors(a.id).size());
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) ready.push(id);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : successors(v)) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != activities_.size()) return {};
  return order;
}

std::string Diagnostic::text() const {
  std::ostringstream os;
  os << code;
  if (!ids.empty()) {
    os << ':';
    for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? "," : " ") << ids[i];
  }
  return os.str();
}

int reconvergence_node(const Network& net, int or_id) {
  const auto& bundles = net.bundles(or_id);
  if (bundles.empty()) throw ModelError("activity " + std::to_string(or_id) + " has no relations");
  std::set<int> common;
  for (std::size_t k = 0; k < bundles.size(); ++k) {
    auto reach = reach_from(net, bundles[k]);
    if (k == 0) {
      common = std::move(reach);
    } else {
      std::set<int> both;
      std::set_intersection(common.begin(), common.end(), reach.begin(), reach.end(),
                            std::inserter(both, both.end()));
      common = std::move(both);
    }
  }
  if (common.empty()) {
    throw ModelError("relations of " + std::to_string(or_id) + " never reconverge");
  }
  auto order = net.topological_order();
  for (int v : order) {
    if (common.count(v)) return v;
  }
  throw ModelError("cyclic network");
}

std::vector<int> relation_members(const Network& net, int or_id, std::size_t bundle_index) {
  int end = reconvergence_node(net, or_id);
  auto after = reach_from(net, {end});
  auto reach = reach_from(net, net.bundles(or_id).at(bundle_index));
  std::vector<int> out;
  for (int v : reach) {
    if (!after.count(v)) out.push_back(v);
  }
  return out;
}

std::vector<Diagnostic> validate_network(const Network& net) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string code, std::vector<int> ids) {
    out.push_back({std::move(code), std::move(ids)});
  };

  int sources = 0;
  int sinks = 0;
  for (const auto& a : net.activities()) {
    sources += a.kind == ActivityKind::Source;
    sinks += a.kind == ActivityKind::Sink;
    if (a.is_meta()) report("meta-in-input", {a.id});
    if (a.min_duration < 0 || a.max_duration < a.min_duration) report("durations", {a.id});
    bool dummy = a.kind == ActivityKind::Source || a.kind == ActivityKind::Sink;
    if (dummy && (a.min_duration != 0 || a.max_duration != 0 || !a.demands.empty())) {
      report("dummy", {a.id});
    }
    for (const auto& [r, q] : a.demands) {
      if (q < 0) report("demand", {a.id, r});
    }
    if ((a.kind == ActivityKind::Out) != a.due_date.has_value()) report("delivery", {a.id});
    if (a.kind == ActivityKind::Out && net.predecessors(a.id).empty()) {
      report("delivery-without-predecessor", {a.id});
    }
    if (dummy == a.lot.has_value() && !a.is_meta()) report("lot", {a.id});
    const auto& bundles = net.bundles(a.id);
    for (const auto& b : bundles) {
      if (b.empty()) {
        report("empty-relation", {a.id});
        break;
      }
    }
    if (a.kind != ActivityKind::Or && bundles.size() > 1) report("multiple-bundles", {a.id});
    if (a.kind == ActivityKind::Or && bundles.empty()) report("or-without-relation", {a.id});
  }
  if (sources != 1 || !net.contains(net.source_id()) ||
      net.activity(net.source_id()).kind != ActivityKind::Source) {
    report("source", {net.source_id()});
  }
  if (sinks != 1 || !net.contains(net.sink_id()) ||
      net.activity(net.sink_id()).kind != ActivityKind::Sink) {
    report("sink", {net.sink_id()});
  }
  if (!out.empty()) return out;

  for (const auto& [from, to] : net.arcs()) {
    if (from == to) report("cycle", {from});
  }
  if (net.topological_order().empty()) {
    // Name the activities that lie on some cycle.
    std::vector<int> on_cycle;
    for (const auto& a : net.activities()) {
      auto reach = reach_from(net, net.successors(a.id));
      if (reach.count(a.id)) on_cycle.push_back(a.id);
    }
    bool has_self_loop = !out.empty();
    if (!has_self_loop || on_cycle.size() > out.size()) report("cycle", on_cycle);
    return out;
  }

  auto from_source = reach_from(net, {net.source_id()});
  for (const auto& a : net.activities()) {
    if (!from_source.count(a.id)) report("unreachable", {a.id});
    auto forward = reach_from(net, {a.id});
    if (!forward.count(net.sink_id())) report("dead-end", {a.id});
  }
  if (!out.empty()) return out;

  for (int lot : net.lots()) {
    if (!net.lot_entry(lot)) report("lot-entry", {lot});
    int outs = 0;
    for (int id : net.lot_members(lot)) outs += net.activity(id).kind == ActivityKind::Out;
    if (outs > 1) report("lot-terminal", {lot});
  }

  for (const auto& a : net.activities()) {
    if (a.kind != ActivityKind::Or || net.bundles(a.id).size() < 2) continue;
    const auto& bundles = net.bundles(a.id);
    std::set<int> seen;
    bool ok = true;
    for (std::size_t k = 0; k < bundles.size() && ok; ++k) {
      auto members = relation_members(net, a.id, k);
      std::set<int> allowed(members.begin(), members.end());
      for (int v : members) {
        if (!seen.insert(v).second) ok = false;
        if (net.activity(v).lot != a.lot) ok = false;
        for (int p : net.predecessors(v)) {
          if (p != a.id && !allowed.count(p)) ok = false;
        }
      }
    }
    if (!ok) report("relation-shape", {a.id});
  }
  return out;
}

std::vector<Route> enumerate_routes(const Network& net, int lot) {
  auto entry = net.lot_entry(lot);
  auto terminal = net.lot_terminal(lot);
  if (!entry) throw ModelError("lot " + std::to_string(lot) + " has no unique entry");
  auto options = [&](int v) {
    std::vector<std::vector<int>> groups;
    const auto& bundles = net.bundles(v);
    auto inside = [&](const Bundle& b) {
      std::vector<int> keep;
      for (int w : b) {
        if (net.activity(w).lot == lot) keep.push_back(w);
      }
      return keep;
    };
    if (net.activity(v).kind == ActivityKind::Or && bundles.size() > 1) {
      for (const auto& b : bundles) groups.push_back(inside(b));
    } else {
      std::vector<int> all;
      for (const auto& b : bundles) {
        auto keep = inside(b);
        all.insert(all.end(), keep.begin(), keep.end());
      }
      groups.push_back(std::move(all));
    }
    return groups;
  };
  auto sets = detail::expand_closed_sets(*entry, options);
  auto order = net.topological_order();
  std::vector<Route> routes;
  for (const auto& s : sets) {
    if (terminal && !std::binary_search(s.begin(), s.end(), *terminal)) {
      throw ModelError("lot " + std::to_string(lot) + " has a route that misses activity " +
                       std::to_string(*terminal));
    }
    Route r;
    for (int v : order) {
      if (std::binary_search(s.begin(), s.end(), v)) r.push_back(v);
    }
    routes.push_back(std::move(r));
  }
  std::sort(routes.begin(), routes.end());
  return routes;
}

}  // namespace rcmpsp
