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

#ifndef RCMPSP_GENERATOR_HPP_
#define RCMPSP_GENERATOR_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "rcmpsp/instance.hpp"
#include "rcmpsp/rng.hpp"

namespace rcmpsp {

// Inclusive integer range.
struct IntRange {
  int lo = 0;
  int hi = 0;
};

// Activity palette of the generated multi-lot instances.
enum ActivityType : int {
  kProduction = 0,
  kCooling = 1,
  kProcessing = 2,
  kRelocation = 3,
  kStoraging = 4,
  kVehicleRelocation = 5,
  kDelivery = 6,
};

// The fixed pool of route shapes: activity types strictly between
// production and delivery.
const std::vector<std::vector<int>>& default_route_templates();

struct GeneratorParams {
  int lot_count = 10;
  Pattern pattern = Pattern::RealWorld;
  Rational resource_strength{1, 4};
  std::uint64_t seed = 1;
  IntRange slack_range{10, 20};
  IntRange min_duration_range{1, 4};  // [1, 5)
  IntRange demand_range{1, 9};        // [1, 10), rand pattern only
  int resource_count = 9;
  int max_routes = 3;
  std::vector<std::vector<int>> route_templates = default_route_templates();
  int release_stagger = 0;  // lot l is released at l * release_stagger
};

// Throws std::invalid_argument on empty or out-of-order ranges.
void check_params(const GeneratorParams& params);

// d_l = t_l + uniform[t_l, 2 t_l], drawn in ascending lot order.
std::map<int, int> generate_due_dates(const std::map<int, int>& earliest, Rng& rng);

// b_j = d_l - t_l + slack_l for flexible activities; fixed ones keep a_j.
std::map<int, int> generate_max_durations(const Network& net, const std::set<int>& flexible,
                                          const std::map<int, int>& due,
                                          const std::map<int, int>& earliest,
                                          const std::map<int, int>& slack);

struct CapacityBounds {
  int c_min = 0;  // largest single-activity demand
  int c_max = 0;  // peak of the earliest-start schedule
};

// Bounds per renewable resource id. The earliest-start schedule includes
// every activity of every route at its minimum duration.
std::map<int, CapacityBounds> capacity_bounds(const Network& net,
                                              const std::vector<Resource>& resources);

// Time-averaged number of lots whose [release, due) windows overlap.
Rational parallel_lot_estimate(const std::vector<int>& releases, const std::vector<int>& dues);

// C_lower = ceil(C_min * L_par), C_upper = C_lower + C_max,
// C = C_lower + ceil(RS * (C_upper - C_lower)); rw resources outside the
// balancing set get 2 * C_min instead. Throws ModelError when C is 0.
int capacity_from_bounds(const CapacityBounds& bounds, const Rational& resource_strength,
                         const Rational& parallel_lots, Pattern pattern, bool balanced);

// Multi-lot instance with alternative routes and flexible durations.
Instance generate_actf_instance(const GeneratorParams& params);

enum class AcMode { Single, Multi };

// Single-project (copies in sequence) or multi-project (copies in parallel)
// instance with fixed durations built from a 30-activity structure with
// five nested OR activities. Both modes draw identical data for a seed.
Instance generate_ac_instance(int multiplier, AcMode mode, std::uint64_t seed,
                              const Rational& resource_strength = Rational(1, 2));

// Two-lot demo network (activities 0..14) used in docs and tests.
Instance make_toy_instance();

// Fifty lots, eight resources with capacities 10,10,30,10,50,240,220,80,
// balancing resources 6 and 8, minute resolution and a 4088 minute horizon.
Instance generate_case_study_instance(std::uint64_t seed);

}  // namespace rcmpsp

#endif  // RCMPSP_GENERATOR_HPP_
