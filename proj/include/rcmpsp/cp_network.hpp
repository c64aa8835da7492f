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

#ifndef RCMPSP_CP_NETWORK_HPP_
#define RCMPSP_CP_NETWORK_HPP_

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "rcmpsp/network.hpp"

namespace rcmpsp {

// Network rewritten for interval-variable models. Every OR activity with two
// or more relations points at one alternative meta node whose options are
// either the relation's single activity or a span meta node covering a
// multi-activity relation.
struct CpNetwork {
  Network base;  // original activities and relations plus the meta activities
  std::set<std::pair<int, int>> cp_adjacency;
  std::map<int, std::vector<int>> alt_starts;  // S_i, meta-alt -> options
  std::map<int, std::vector<int>> alt_ends;    // E_i, meta-alt -> reconvergence node
  std::map<int, std::vector<int>> span_sets;   // G_i, meta-span -> covered activities
  std::map<int, int> alt_owner;                // meta-alt -> its OR activity
  std::vector<int> meta_set;

  bool is_meta(int id) const;
  std::vector<int> cp_successors(int id) const;
};

// Meta ids continue after the largest non-sink id (skipping the sink's id if
// it is in the way), alternatives first, both in ascending OR-activity order.
// Throws ModelError on networks that fail validate_network.
CpNetwork to_cp_network(const Network& net);

// Drops the meta activities, recovering the network the transform started from.
Network strip_meta(const CpNetwork& cp);

// Routes of `lot` obtained by walking cp_adjacency, choosing one option per
// alternative node; meta ids are removed and the rest listed in the base
// network's topological order.
std::vector<Route> enumerate_cp_routes(const CpNetwork& cp, int lot);

}  // namespace rcmpsp

#endif  // RCMPSP_CP_NETWORK_HPP_
