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

#ifndef RCMPSP_NETWORK_HPP_
#define RCMPSP_NETWORK_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rcmpsp {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ActivityKind { And, Or, Out, Source, Sink, MetaAlt, MetaSpan };

std::string_view to_string(ActivityKind kind);
ActivityKind parse_activity_kind(std::string_view text);

struct Activity {
  int id = 0;
  ActivityKind kind = ActivityKind::And;
  int min_duration = 0;
  int max_duration = 0;
  std::map<int, int> demands;   // resource id -> quantity
  std::optional<int> due_date;  // delivery activities only
  std::optional<int> lot;

  bool is_dummy() const {
    return kind == ActivityKind::Source || kind == ActivityKind::Sink || is_meta();
  }
  bool is_meta() const { return kind == ActivityKind::MetaAlt || kind == ActivityKind::MetaSpan; }
  bool is_fixed() const { return min_duration == max_duration; }
  int demand(int resource) const {
    auto it = demands.find(resource);
    return it == demands.end() ? 0 : it->second;
  }
};

using Bundle = std::vector<int>;

// Activity-on-node precedence graph. Successors are stored as grouped
// bundles: an AND activity has one bundle holding all of its successors, an
// OR activity has one bundle per alternative successor relation.
class Network {
 public:
  Network() = default;
  Network(std::vector<Activity> activities, std::map<int, std::vector<Bundle>> relations,
          int source_id, int sink_id);

  const std::vector<Activity>& activities() const { return activities_; }
  const std::map<int, std::vector<Bundle>>& relations() const { return relations_; }
  int source_id() const { return source_id_; }
  int sink_id() const { return sink_id_; }

  bool contains(int id) const { return index_.count(id) != 0; }
  const Activity& activity(int id) const;
  // Position of `id` in activities(), which is sorted by id.
  int index_of(int id) const;

  const std::vector<Bundle>& bundles(int id) const;
  const std::vector<int>& successors(int id) const;
  const std::vector<int>& predecessors(int id) const;
  std::vector<std::pair<int, int>> arcs() const;

  std::vector<int> delivery_set() const;
  std::vector<int> lots() const;
  int lot_count() const { return static_cast<int>(lots().size()); }
  std::vector<int> lot_members(int lot) const;

  // Activity of `lot` with no predecessor inside the lot; nullopt unless unique.
  std::optional<int> lot_entry(int lot) const;
  // The lot's OUT activity, otherwise its unique member without successors
  // inside the lot.
  std::optional<int> lot_terminal(int lot) const;

  // Ids in a topological order (Kahn, smallest id first); empty on a cycle.
  std::vector<int> topological_order() const;

 private:
  std::vector<Activity> activities_;
  std::map<int, std::vector<Bundle>> relations_;
  int source_id_ = 0;
  int sink_id_ = 0;
  std::unordered_map<int, int> index_;
  std::unordered_map<int, std::vector<int>> succ_;
  std::unordered_map<int, std::vector<int>> pred_;
};

struct Diagnostic {
  std::string code;  // "cycle", "unreachable", ...
  std::vector<int> ids;
  std::string text() const;
};

// Empty iff every structural invariant holds. Networks whose OR relations
// do not form disjoint sub-trees that reconverge at one node are rejected
// with code "relation-shape".
std::vector<Diagnostic> validate_network(const Network& net);

// One route: the activity ids of a lot under one complete selection of OR
// relations, listed in topological order.
using Route = std::vector<int>;

// All routes of `lot`, sorted lexicographically. Throws ModelError when the
// lot cannot reach its terminal activity.
std::vector<Route> enumerate_routes(const Network& net, int lot);

// Node from which every relation of OR activity `or_id` is reconverged: the
// earliest common descendant of all bundles, in topological order.
int reconvergence_node(const Network& net, int or_id);

// Activities on the `bundle_index`-th relation of `or_id`, i.e. everything
// reachable from the bundle before the reconvergence node, ascending ids.
std::vector<int> relation_members(const Network& net, int or_id, std::size_t bundle_index);

}  // namespace rcmpsp

#endif  // RCMPSP_NETWORK_HPP_
