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

// Enumeration of activity sets closed under a node-expansion rule. Both the
// plain AND/OR network and its meta-node transformation describe routes as
// "start somewhere, expand each reached node by one of its options".

#ifndef RCMPSP_SRC_ROUTE_EXPANDER_HPP_
#define RCMPSP_SRC_ROUTE_EXPANDER_HPP_

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

namespace rcmpsp::detail {

// `options(v)` lists the alternative groups of nodes that expanding `v`
// adds; a single group means no choice. Returns every distinct reachable
// closed set, each sorted ascending.
inline std::vector<std::vector<int>> expand_closed_sets(
    int start, const std::function<std::vector<std::vector<int>>(int)>& options) {
  struct Partial {
    std::set<int> members;
    std::vector<int> frontier;
  };
  std::set<std::vector<int>> found;
  std::vector<Partial> stack;
  stack.push_back({{start}, {start}});
  while (!stack.empty()) {
    Partial p = std::move(stack.back());
    stack.pop_back();
    if (p.frontier.empty()) {
      found.insert(std::vector<int>(p.members.begin(), p.members.end()));
      continue;
    }
    // Expand the smallest pending id first so the order is deterministic.
    auto smallest = std::min_element(p.frontier.begin(), p.frontier.end());
    int v = *smallest;
    p.frontier.erase(smallest);
    auto groups = options(v);
    if (groups.empty()) groups.emplace_back();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      Partial child = (g + 1 == groups.size()) ? std::move(p) : p;
      for (int w : groups[g]) {
        if (child.members.insert(w).second) child.frontier.push_back(w);
      }
      stack.push_back(std::move(child));
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace rcmpsp::detail

#endif  // RCMPSP_SRC_ROUTE_EXPANDER_HPP_
