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

#include "rcmpsp/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rcmpsp {

const std::vector<std::vector<int>>& default_route_templates() {
  static const std::vector<std::vector<int>> kTemplates = {
      {kCooling, kStoraging, kVehicleRelocation},
      {kCooling, kProcessing, kStoraging, kVehicleRelocation},
      {kRelocation, kStoraging, kProcessing, kVehicleRelocation},
      {kCooling, kRelocation, kProcessing, kStoraging, kVehicleRelocation},
      {kProcessing, kCooling, kStoraging, kRelocation, kStoraging, kVehicleRelocation},
      {kCooling, kProcessing, kRelocation, kStoraging, kCooling, kStoraging, kVehicleRelocation},
  };
  return kTemplates;
}

namespace {

void check_range(const IntRange& r, int floor, const char* what) {
  if (r.lo > r.hi || r.lo < floor) {
    throw std::invalid_argument(std::string("bad ") + what + " range [" + std::to_string(r.lo) +
                                ", " + std::to_string(r.hi) + "]");
  }
}

}  // namespace

void check_params(const GeneratorParams& params) {
  if (params.lot_count < 1) throw std::invalid_argument("lot_count must be positive");
  check_range(params.slack_range, 0, "slack");
  check_range(params.min_duration_range, 0, "min_duration");
  check_range(params.demand_range, 1, "demand");
  if (params.resource_count < 1) throw std::invalid_argument("resource_count must be positive");
  if (params.max_routes < 1) throw std::invalid_argument("max_routes must be positive");
  if (params.route_templates.empty()) throw std::invalid_argument("no route templates");
  for (const auto& t : params.route_templates) {
    if (t.empty()) throw std::invalid_argument("empty route template");
    for (int type : t) {
      if (type <= kProduction || type >= kDelivery) {
        throw std::invalid_argument("route template types must lie in 1..5");
      }
    }
  }
  if (params.release_stagger < 0) throw std::invalid_argument("release_stagger must be >= 0");
  if (params.resource_strength < Rational(0) || params.resource_strength > Rational(1)) {
    throw std::invalid_argument("resource_strength must lie in [0, 1]");
  }
}

std::map<int, int> generate_due_dates(const std::map<int, int>& earliest, Rng& rng) {
  std::map<int, int> due;
  for (const auto& [lot, t] : earliest) {
    due[lot] = t + static_cast<int>(rng.uniform(t, 2 * static_cast<std::int64_t>(t)));
  }
  return due;
}

std::map<int, int> generate_max_durations(const Network& net, const std::set<int>& flexible,
                                          const std::map<int, int>& due,
                                          const std::map<int, int>& earliest,
                                          const std::map<int, int>& slack) {
  std::map<int, int> out;
  for (const auto& a : net.activities()) {
    if (a.is_dummy()) continue;
    if (!flexible.count(a.id) || !a.lot) {
      out[a.id] = a.min_duration;
      continue;
    }
    const int lot = *a.lot;
    out[a.id] = std::max(a.min_duration, due.at(lot) - earliest.at(lot) + slack.at(lot));
  }
  return out;
}

std::map<int, CapacityBounds> capacity_bounds(const Network& net,
                                              const std::vector<Resource>& resources) {
  std::map<int, int> start;
  int end_max = 0;
  for (int v : net.topological_order()) {
    int s = 0;
    for (int p : net.predecessors(v)) s = std::max(s, start[p] + net.activity(p).min_duration);
    start[v] = s;
    end_max = std::max(end_max, s + net.activity(v).min_duration);
  }
  std::map<int, CapacityBounds> out;
  for (const auto& r : resources) {
    if (!r.renewable) continue;
    CapacityBounds b;
    std::vector<int> profile(static_cast<std::size_t>(end_max) + 1, 0);
    for (const auto& a : net.activities()) {
      const int q = a.demand(r.id);
      if (q == 0) continue;
      b.c_min = std::max(b.c_min, q);
      for (int t = start[a.id]; t < start[a.id] + a.min_duration; ++t) profile[t] += q;
    }
    b.c_max = *std::max_element(profile.begin(), profile.end());
    out[r.id] = b;
  }
  return out;
}

Rational parallel_lot_estimate(const std::vector<int>& releases, const std::vector<int>& dues) {
  if (releases.size() != dues.size() || dues.empty()) {
    throw std::invalid_argument("parallel_lot_estimate needs one release per due date");
  }
  std::int64_t covered = 0;
  for (std::size_t i = 0; i < dues.size(); ++i) covered += std::max(0, dues[i] - releases[i]);
  const int lo = *std::min_element(releases.begin(), releases.end());
  const int hi = *std::max_element(dues.begin(), dues.end());
  if (hi <= lo || covered == 0) return Rational(1);
  return Rational(covered, hi - lo);
}

int capacity_from_bounds(const CapacityBounds& bounds, const Rational& resource_strength,
                         const Rational& parallel_lots, Pattern pattern, bool balanced) {
  int capacity = 0;
  if (pattern == Pattern::RealWorld && !balanced) {
    capacity = 2 * bounds.c_min;
  } else {
    const auto lower = (Rational(bounds.c_min) * parallel_lots).ceil();
    capacity = static_cast<int>(lower + (resource_strength * Rational(bounds.c_max)).ceil());
  }
  if (capacity <= 0) throw ModelError("resource capacity computes to 0");
  return capacity;
}

}  // namespace rcmpsp
