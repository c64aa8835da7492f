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

#ifndef RCMPSP_INSTANCE_HPP_
#define RCMPSP_INSTANCE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rcmpsp/network.hpp"
#include "rcmpsp/rational.hpp"

namespace rcmpsp {

enum class Pattern { RealWorld, Random };
enum class ProblemClass { RcpspAc, RcmpspAc, RcmpspActf };

std::string_view to_string(Pattern p);        // "rw" / "rand"
std::string_view to_string(ProblemClass c);   // "RCPSP_AC" / ...
Pattern parse_pattern(std::string_view text);
ProblemClass parse_problem_class(std::string_view text);

struct Resource {
  int id = 0;
  int capacity = 1;
  bool balanced = false;  // member of the load-balancing set
  bool renewable = true;
};

struct Instance {
  std::string name;
  Network network;
  std::vector<Resource> resources;
  int horizon = 0;
  Pattern pattern = Pattern::RealWorld;
  Rational resource_strength{0};
  std::uint64_t seed = 0;
  ProblemClass problem_class = ProblemClass::RcmpspActf;

  const Resource& resource(int id) const;
  std::vector<int> balanced_resources() const;
};

// Network diagnostics plus resource and horizon checks, as readable strings.
std::vector<std::string> validate_instance(const Instance& inst);

// Share of (non-dummy activity, renewable resource) pairs with positive demand.
Rational resource_factor(const Instance& inst);

// Earliest finish of `lot` with every activity at its minimum duration and
// no resource limits, taking the cheapest route.
int earliest_completion(const Network& net, int lot);

}  // namespace rcmpsp

#endif  // RCMPSP_INSTANCE_HPP_
