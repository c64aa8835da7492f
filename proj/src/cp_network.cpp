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

#include "rcmpsp/cp_network.hpp"

#include <algorithm>
#include <limits>

#include "route_expander.hpp"

namespace rcmpsp {

bool CpNetwork::is_meta(int id) const {
  return std::binary_search(meta_set.begin(), meta_set.end(), id);
}

std::vector<int> CpNetwork::cp_successors(int id) const {
  std::vector<int> out;
  for (auto it = cp_adjacency.lower_bound({id, std::numeric_limits<int>::min()});
       it != cp_adjacency.end() && it->first == id; ++it) {
    out.push_back(it->second);
  }
  return out;
}

CpNetwork to_cp_network(const Network& net) {
  auto diagnostics = validate_network(net);
  if (!diagnostics.empty()) {
    throw ModelError("cannot transform invalid network: " + diagnostics.front().text());
  }
  CpNetwork cp;
  for (const auto& [i, j] : net.arcs()) cp.cp_adjacency.emplace(i, j);

  std::vector<int> or_nodes;
  int largest = 0;
  for (const auto& a : net.activities()) {
    if (a.id != net.sink_id()) largest = std::max(largest, a.id);
    if (a.kind == ActivityKind::Or && net.bundles(a.id).size() >= 2) or_nodes.push_back(a.id);
  }
  int next_id = largest + 1;
  auto fresh_id = [&] {
    if (next_id == net.sink_id()) ++next_id;
    return next_id++;
  };

  std::map<int, int> meta_of;
  for (int i : or_nodes) meta_of[i] = fresh_id();

  // Spans are numbered after every alternative, so collect relations first.
  struct Rel {
    int or_id;
    std::vector<int> members;
    const Bundle* bundle;
  };
  std::vector<Rel> relations;
  std::map<int, int> end_of;
  for (int i : or_nodes) {
    end_of[i] = reconvergence_node(net, i);
    const auto& bundles = net.bundles(i);
    for (std::size_t k = 0; k < bundles.size(); ++k) {
      relations.push_back({i, relation_members(net, i, k), &bundles[k]});
    }
  }

  std::vector<Activity> activities = net.activities();
  auto add_meta = [&](int id, ActivityKind kind) {
    Activity m;
    m.id = id;
    m.kind = kind;
    activities.push_back(m);
    cp.meta_set.push_back(id);
  };
  for (int i : or_nodes) {
    add_meta(meta_of[i], ActivityKind::MetaAlt);
    cp.alt_owner[meta_of[i]] = i;
    cp.alt_ends[meta_of[i]] = {end_of[i]};
    cp.alt_starts[meta_of[i]];
    cp.cp_adjacency.emplace(i, meta_of[i]);
    for (int first : net.successors(i)) cp.cp_adjacency.erase({i, first});
  }
  for (const auto& rel : relations) {
    int meta = meta_of[rel.or_id];
    int end = end_of[rel.or_id];
    for (int v : rel.members) cp.cp_adjacency.erase({v, end});
    if (rel.members.size() >= 2) {
      int span = fresh_id();
      add_meta(span, ActivityKind::MetaSpan);
      cp.span_sets[span] = rel.members;
      cp.alt_starts[meta].push_back(span);
      for (int first : *rel.bundle) cp.cp_adjacency.emplace(span, first);
    } else {
      cp.alt_starts[meta].push_back(rel.members.front());
    }
  }
  std::sort(cp.meta_set.begin(), cp.meta_set.end());
  cp.base = Network(std::move(activities), net.relations(), net.source_id(), net.sink_id());
  return cp;
}

Network strip_meta(const CpNetwork& cp) {
  std::vector<Activity> real;
  for (const auto& a : cp.base.activities()) {
    if (!cp.is_meta(a.id)) real.push_back(a);
  }
  return Network(std::move(real), cp.base.relations(), cp.base.source_id(), cp.base.sink_id());
}

std::vector<Route> enumerate_cp_routes(const CpNetwork& cp, int lot) {
  const Network& net = cp.base;
  auto entry = net.lot_entry(lot);
  if (!entry) throw ModelError("lot " + std::to_string(lot) + " has no unique entry");
  auto keep = [&](int w) { return cp.is_meta(w) || net.activity(w).lot == lot; };
  auto options = [&](int v) {
    std::vector<std::vector<int>> groups;
    if (auto it = cp.alt_starts.find(v); it != cp.alt_starts.end()) {
      for (int option : it->second) {
        std::vector<int> group{option};
        for (int e : cp.alt_ends.at(v)) {
          if (keep(e)) group.push_back(e);
        }
        groups.push_back(std::move(group));
      }
      return groups;
    }
    std::vector<int> next;
    for (int w : cp.cp_successors(v)) {
      if (keep(w)) next.push_back(w);
    }
    groups.push_back(std::move(next));
    return groups;
  };
  auto order = strip_meta(cp).topological_order();
  std::vector<Route> routes;
  for (const auto& s : detail::expand_closed_sets(*entry, options)) {
    Route r;
    for (int v : order) {
      if (std::binary_search(s.begin(), s.end(), v)) r.push_back(v);
    }
    routes.push_back(std::move(r));
  }
  std::sort(routes.begin(), routes.end());
  routes.erase(std::unique(routes.begin(), routes.end()), routes.end());
  return routes;
}

}  // namespace rcmpsp
