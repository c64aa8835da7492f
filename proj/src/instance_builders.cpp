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

// Concrete instance families: generated multi-lot instances, the composed
// single/multi-project structures, the demo network and the industrial
// case-study mock-up.

#include <algorithm>
#include <array>
#include <string>

#include "rcmpsp/generator.hpp"

namespace rcmpsp {
namespace {

// Ids of one lot: production, one chain per route, delivery.
struct LotLayout {
  int lot = 0;
  int production = 0;
  std::vector<std::vector<int>> chains;
  int delivery = 0;
  std::map<int, int> type_of;
};

LotLayout layout_lot(int lot, const std::vector<std::vector<int>>& routes, int& next_id) {
  LotLayout out;
  out.lot = lot;
  out.production = next_id++;
  out.type_of[out.production] = kProduction;
  for (const auto& route : routes) {
    std::vector<int> chain;
    for (int type : route) {
      chain.push_back(next_id);
      out.type_of[next_id++] = type;
    }
    out.chains.push_back(std::move(chain));
  }
  out.delivery = next_id++;
  out.type_of[out.delivery] = kDelivery;
  return out;
}

void add_lot_relations(const LotLayout& lay, int sink, std::map<int, std::vector<Bundle>>& rel) {
  auto& prod = rel[lay.production];
  for (const auto& chain : lay.chains) {
    prod.push_back({chain.front()});
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) rel[chain[i]] = {{chain[i + 1]}};
    rel[chain.back()] = {{lay.delivery}};
  }
  rel[lay.delivery] = {{sink}};
}

ActivityKind lot_kind(const LotLayout& lay, int id) {
  if (id == lay.delivery) return ActivityKind::Out;
  if (id == lay.production && lay.chains.size() > 1) return ActivityKind::Or;
  return ActivityKind::And;
}

bool fixed_type(int type) { return type == kProduction || type == kRelocation; }

// Picks `count` distinct template indices.
std::vector<int> pick_templates(Rng& rng, int pool, int count) {
  std::vector<int> left(static_cast<std::size_t>(pool));
  for (int i = 0; i < pool; ++i) left[i] = i;
  std::vector<int> out;
  for (int k = 0; k < count; ++k) {
    auto at = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(left.size()) - 1));
    out.push_back(left[at]);
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(at));
  }
  return out;
}

// 1, 2 or 3 routes with probabilities 6/50, 23/50, 21/50.
int draw_route_count(Rng& rng) {
  const auto u = rng.uniform(1, 50);
  return u <= 6 ? 1 : (u <= 29 ? 2 : 3);
}

std::string decimal(const Rational& r) {
  const auto hundredths = (r * Rational(100)).floor();
  std::string frac = std::to_string(hundredths % 100);
  if (frac.size() < 2) frac.insert(frac.begin(), '0');
  return std::to_string(hundredths / 100) + "." + frac;
}

}  // namespace

Instance generate_actf_instance(const GeneratorParams& params) {
  check_params(params);
  Rng rng(params.seed);
  const auto& pool = params.route_templates;
  const int pool_size = static_cast<int>(pool.size());
  const int route_cap = std::min(params.max_routes, pool_size);

  // rw: activity type -> base resource, alternating between two resources
  // for cooling and storaging.
  const std::array<std::vector<int>, 7> rw_map = {{{0}, {1, 6}, {2}, {3}, {4, 5}, {7}, {8}}};
  std::array<int, 7> rw_turn{};
  const int nres = params.resource_count;

  std::vector<LotLayout> lots;
  std::vector<Activity> acts;
  int next_id = 1;
  for (int lot = 1; lot <= params.lot_count; ++lot) {
    const int routes = std::min(draw_route_count(rng), route_cap);
    std::vector<std::vector<int>> chosen;
    for (int idx : pick_templates(rng, pool_size, routes)) chosen.push_back(pool[idx]);
    LotLayout lay = layout_lot(lot, chosen, next_id);
    for (const auto& [id, type] : lay.type_of) {
      Activity a;
      a.id = id;
      a.kind = lot_kind(lay, id);
      a.lot = lot;
      a.min_duration =
          static_cast<int>(rng.uniform(params.min_duration_range.lo, params.min_duration_range.hi));
      a.max_duration = a.min_duration;
      if (params.pattern == Pattern::RealWorld) {
        const auto& options = rw_map[type];
        const int r = options[rw_turn[type]++ % options.size()] % nres;
        a.demands[r] = 1;
      } else {
        for (int r = 0; r < nres; ++r) {
          a.demands[r] =
              static_cast<int>(rng.uniform(params.demand_range.lo, params.demand_range.hi));
        }
      }
      acts.push_back(std::move(a));
    }
    lots.push_back(std::move(lay));
  }
  const int sink = next_id;

  std::map<int, std::vector<Bundle>> rel;
  Bundle from_source;
  for (const auto& lay : lots) {
    from_source.push_back(lay.production);
    add_lot_relations(lay, sink, rel);
  }
  rel[0] = {from_source};
  Activity src;
  src.id = 0;
  src.kind = ActivityKind::Source;
  Activity snk;
  snk.id = sink;
  snk.kind = ActivityKind::Sink;
  acts.push_back(src);
  acts.push_back(snk);
  Network draft = Network(acts, rel, 0, sink);

  std::map<int, int> earliest;
  for (const auto& lay : lots) earliest[lay.lot] = earliest_completion(draft, lay.lot);
  const auto due = generate_due_dates(earliest, rng);
  std::map<int, int> slack;
  for (const auto& lay : lots) {
    slack[lay.lot] =
        static_cast<int>(rng.uniform(params.slack_range.lo, params.slack_range.hi));
  }

  std::set<int> flexible;
  for (const auto& lay : lots) {
    for (const auto& [id, type] : lay.type_of) {
      if (!fixed_type(type)) flexible.insert(id);
    }
  }
  const auto b = generate_max_durations(draft, flexible, due, earliest, slack);
  for (auto& a : acts) {
    if (a.is_dummy()) continue;
    a.max_duration = b.at(a.id);
    if (a.kind == ActivityKind::Out) a.due_date = due.at(*a.lot);
  }
  Network net = Network(acts, rel, 0, sink);

  // Resources nobody demands are dropped.
  std::vector<Resource> resources;
  for (int r = 0; r < nres; ++r) {
    bool used = std::any_of(acts.begin(), acts.end(), [&](const Activity& a) {
      return a.demand(r) > 0;
    });
    if (!used) continue;
    Resource res;
    res.id = r;
    res.balanced = r == 4 % nres || r == 5 % nres;
    resources.push_back(res);
  }
  std::vector<int> releases;
  std::vector<int> dues;
  for (const auto& lay : lots) {
    releases.push_back((lay.lot - 1) * params.release_stagger);
    dues.push_back(due.at(lay.lot));
  }
  const Rational l_par = parallel_lot_estimate(releases, dues);
  const auto bounds = capacity_bounds(net, resources);
  for (auto& res : resources) {
    res.capacity = capacity_from_bounds(bounds.at(res.id), params.resource_strength, l_par,
                                        params.pattern, res.balanced);
  }

  int max_due = 0;
  int max_tail = 0;
  for (const auto& lay : lots) {
    max_due = std::max(max_due, due.at(lay.lot));
    max_tail = std::max(max_tail, earliest.at(lay.lot) + params.slack_range.hi);
  }

  Instance inst;
  inst.name = "actf_L" + std::to_string(params.lot_count) + "_" +
              std::string(to_string(params.pattern)) + "_RS" +
              decimal(params.resource_strength) + "_s" + std::to_string(params.seed);
  inst.network = std::move(net);
  inst.resources = std::move(resources);
  inst.horizon = max_due + max_tail;
  inst.pattern = params.pattern;
  inst.resource_strength = params.resource_strength;
  inst.seed = params.seed;
  inst.problem_class = ProblemClass::RcmpspActf;
  return inst;
}

namespace {

// Base structure of the composed instances, local ids 1..30.
struct AcNode {
  int id;
  ActivityKind kind;
  std::vector<Bundle> bundles;  // local ids; 0 marks "leave the copy"
};

const std::vector<AcNode>& ac_structure() {
  using K = ActivityKind;
  static const std::vector<AcNode> kNodes = {
      {1, K::And, {{2, 3}}},     {2, K::Or, {{4}, {5}}},     {3, K::Or, {{14}, {15}}},
      {4, K::And, {{6}}},        {5, K::Or, {{7}, {8}}},     {6, K::And, {{12}}},
      {7, K::And, {{9}}},        {8, K::And, {{10}}},        {9, K::And, {{12}}},
      {10, K::And, {{11}}},      {11, K::And, {{12}}},       {12, K::And, {{13}}},
      {13, K::And, {{26}}},      {14, K::And, {{16, 17}}},   {15, K::Or, {{18}, {19}}},
      {16, K::And, {{20}}},      {17, K::And, {{20}}},       {18, K::And, {{21}}},
      {19, K::Or, {{22}, {23}}}, {20, K::And, {{24}}},       {21, K::And, {{24}}},
      {22, K::And, {{24}}},      {23, K::And, {{25}}},       {24, K::And, {{13}}},
      {25, K::And, {{24}}},      {26, K::And, {{27}}},       {27, K::And, {{28}}},
      {28, K::And, {{29}}},      {29, K::And, {{30}}},       {30, K::And, {{0}}},
  };
  return kNodes;
}

constexpr int kAcSize = 30;
constexpr int kAcRenewables = 4;
constexpr int kAcNonRenewable = kAcRenewables;  // resource id of the budget

}  // namespace

Instance generate_ac_instance(int multiplier, AcMode mode, std::uint64_t seed,
                              const Rational& resource_strength) {
  if (multiplier < 1) throw std::invalid_argument("multiplier must be positive");
  Rng rng(seed);
  const int sink = multiplier * kAcSize + 1;
  std::vector<Activity> acts;
  std::int64_t total_duration = 0;
  for (int copy = 0; copy < multiplier; ++copy) {
    for (const auto& node : ac_structure()) {
      Activity a;
      a.id = copy * kAcSize + node.id;
      a.kind = node.kind;
      a.lot = copy + 1;
      a.min_duration = a.max_duration = static_cast<int>(rng.uniform(1, 10));
      total_duration += a.min_duration;
      for (int r = 0; r <= kAcNonRenewable; ++r) {
        if (rng.uniform(0, 1) == 1) a.demands[r] = static_cast<int>(rng.uniform(1, 10));
      }
      acts.push_back(std::move(a));
    }
  }
  Activity src;
  src.id = 0;
  src.kind = ActivityKind::Source;
  Activity snk;
  snk.id = sink;
  snk.kind = ActivityKind::Sink;
  acts.push_back(src);
  acts.push_back(snk);

  auto relations = [&](AcMode m) {
    std::map<int, std::vector<Bundle>> rel;
    Bundle from_source;
    for (int copy = 0; copy < multiplier; ++copy) {
      const int off = copy * kAcSize;
      for (const auto& node : ac_structure()) {
        std::vector<Bundle> bundles;
        for (const auto& local : node.bundles) {
          Bundle b;
          for (int v : local) {
            if (v != 0) {
              b.push_back(off + v);
            } else if (m == AcMode::Single && copy + 1 < multiplier) {
              b.push_back(off + kAcSize + 1);
            } else {
              b.push_back(sink);
            }
          }
          bundles.push_back(std::move(b));
        }
        rel[off + node.id] = std::move(bundles);
      }
      if (m == AcMode::Multi || copy == 0) from_source.push_back(off + 1);
    }
    rel[0] = {from_source};
    return rel;
  };

  // Capacities come from the sequential composition in both modes.
  Network single(acts, relations(AcMode::Single), 0, sink);
  std::vector<Resource> resources;
  for (int r = 0; r < kAcRenewables; ++r) resources.push_back({r, 1, false, true});
  const auto bounds = capacity_bounds(single, resources);
  for (auto& res : resources) {
    const auto& b = bounds.at(res.id);
    res.capacity = b.c_min == 0 ? 1
                                : capacity_from_bounds(b, resource_strength, Rational(1),
                                                       Pattern::Random, false);
  }
  std::int64_t budget = 0;
  for (int lot = 1; lot <= multiplier; ++lot) {
    std::int64_t lo = -1;
    std::int64_t hi = 0;
    for (const auto& route : enumerate_routes(single, lot)) {
      std::int64_t used = 0;
      for (int v : route) used += single.activity(v).demand(kAcNonRenewable);
      lo = lo < 0 ? used : std::min(lo, used);
      hi = std::max(hi, used);
    }
    budget += lo + (resource_strength * Rational(hi - lo)).ceil();
  }
  resources.push_back({kAcNonRenewable, static_cast<int>(std::max<std::int64_t>(budget, 1)),
                       false, false});

  Instance inst;
  inst.name = std::string(mode == AcMode::Single ? "ac_single_x" : "ac_multi_x") +
              std::to_string(multiplier) + "_s" + std::to_string(seed);
  inst.network = mode == AcMode::Single ? std::move(single)
                                        : Network(acts, relations(AcMode::Multi), 0, sink);
  inst.resources = std::move(resources);
  inst.horizon = static_cast<int>(total_duration);
  inst.pattern = Pattern::Random;
  inst.resource_strength = resource_strength;
  inst.seed = seed;
  inst.problem_class = mode == AcMode::Single ? ProblemClass::RcpspAc : ProblemClass::RcmpspAc;
  return inst;
}

Instance make_toy_instance() {
  using K = ActivityKind;
  // id, kind, a, b, demands, due, lot
  auto act = [](int id, K kind, int a, int b, std::map<int, int> d, std::optional<int> due,
                std::optional<int> lot) {
    Activity x;
    x.id = id;
    x.kind = kind;
    x.min_duration = a;
    x.max_duration = b;
    x.demands = std::move(d);
    x.due_date = due;
    x.lot = lot;
    return x;
  };
  std::vector<Activity> acts = {
      act(0, K::Source, 0, 0, {}, {}, {}),
      act(1, K::Or, 2, 2, {{0, 1}}, {}, 1),
      act(2, K::And, 2, 5, {{2, 1}}, {}, 1),
      act(3, K::And, 3, 4, {{0, 1}}, {}, 1),
      act(4, K::And, 1, 6, {{1, 1}}, {}, 1),
      act(5, K::And, 1, 1, {{2, 1}}, {}, 1),
      act(6, K::Out, 1, 3, {{2, 1}}, 10, 1),
      act(7, K::Or, 2, 2, {{0, 1}}, {}, 2),
      act(8, K::And, 3, 6, {{1, 1}}, {}, 2),
      act(9, K::And, 2, 4, {{0, 1}}, {}, 2),
      act(10, K::And, 1, 5, {{1, 1}}, {}, 2),
      act(11, K::And, 2, 2, {{2, 1}}, {}, 2),
      act(12, K::And, 1, 4, {{1, 1}}, {}, 2),
      act(13, K::Out, 1, 2, {{2, 1}}, 12, 2),
      act(14, K::Sink, 0, 0, {}, {}, {}),
  };
  std::map<int, std::vector<Bundle>> rel = {
      {0, {{1, 7}}},  {1, {{2}, {3}}}, {2, {{4}}},   {3, {{5}}},   {4, {{6}}},
      {5, {{6}}},     {6, {{14}}},     {7, {{8}, {9}, {11}}},      {8, {{13}}},
      {9, {{10}}},    {10, {{13}}},    {11, {{12}}}, {12, {{13}}}, {13, {{14}}},
  };
  Instance inst;
  inst.name = "toy";
  inst.network = Network(std::move(acts), std::move(rel), 0, 14);
  inst.resources = {{0, 1, false, true}, {1, 2, true, true}, {2, 1, false, true}};
  inst.horizon = 24;
  inst.pattern = Pattern::RealWorld;
  inst.resource_strength = Rational(0);
  inst.seed = 0;
  inst.problem_class = ProblemClass::RcmpspActf;
  return inst;
}

Instance generate_case_study_instance(std::uint64_t seed) {
  constexpr int kLots = 50;
  constexpr int kHorizon = 4088;
  constexpr int kLatestDue = 4000;
  constexpr int kDueGap = 30;
  // Minimum-duration ranges in minutes, by activity type.
  const std::array<IntRange, 7> minutes = {
      {{30, 90}, {60, 180}, {20, 60}, {10, 30}, {30, 120}, {15, 45}, {5, 15}}};
  // Resource ids 1..8; storaging alternates between 7 and 8.
  const std::array<std::vector<int>, 7> res_of = {{{1}, {6}, {3}, {2}, {7, 8}, {5}, {4}}};
  constexpr int kHandover = 4;
  constexpr int kHandoverDemand = 10;
  std::array<int, 7> turn{};

  Rng rng(seed);
  std::vector<int> route_counts;
  route_counts.insert(route_counts.end(), 21, 3);
  route_counts.insert(route_counts.end(), 23, 2);
  route_counts.insert(route_counts.end(), 6, 1);
  for (int i = kLots - 1; i > 0; --i) std::swap(route_counts[i], route_counts[rng.uniform(0, i)]);

  const auto& pool = default_route_templates();
  std::vector<LotLayout> lots;
  std::vector<Activity> acts;
  int next_id = 1;
  for (int lot = 1; lot <= kLots; ++lot) {
    std::vector<std::vector<int>> chosen;
    for (int idx : pick_templates(rng, static_cast<int>(pool.size()), route_counts[lot - 1])) {
      chosen.push_back(pool[idx]);
    }
    LotLayout lay = layout_lot(lot, chosen, next_id);
    for (const auto& [id, type] : lay.type_of) {
      Activity a;
      a.id = id;
      a.kind = lot_kind(lay, id);
      a.lot = lot;
      a.min_duration = a.max_duration =
          static_cast<int>(rng.uniform(minutes[type].lo, minutes[type].hi));
      const auto& options = res_of[type];
      const int r = options[turn[type]++ % options.size()];
      a.demands[r] = r == kHandover ? kHandoverDemand : 1;
      acts.push_back(std::move(a));
    }
    lots.push_back(std::move(lay));
  }
  const int sink = next_id;
  std::map<int, std::vector<Bundle>> rel;
  Bundle from_source;
  for (const auto& lay : lots) {
    from_source.push_back(lay.production);
    add_lot_relations(lay, sink, rel);
  }
  rel[0] = {from_source};
  Activity src;
  src.id = 0;
  src.kind = ActivityKind::Source;
  Activity snk;
  snk.id = sink;
  snk.kind = ActivityKind::Sink;
  acts.push_back(src);
  acts.push_back(snk);
  Network draft(acts, rel, 0, sink);

  std::map<int, int> earliest;
  std::vector<std::pair<int, int>> order;  // (due, lot)
  for (const auto& lay : lots) {
    const int t = earliest_completion(draft, lay.lot);
    earliest[lay.lot] = t;
    order.emplace_back(static_cast<int>(rng.uniform(std::max(t + 120, 300), kLatestDue)), lay.lot);
  }
  // Deliveries share a unary handover resource, so due dates are spread
  // at least kDueGap apart.
  std::sort(order.begin(), order.end());
  for (std::size_t i = 1; i < order.size(); ++i) {
    order[i].first = std::max(order[i].first, order[i - 1].first + kDueGap);
  }
  order.back().first = std::min(order.back().first, kLatestDue);
  for (std::size_t i = order.size() - 1; i-- > 0;) {
    order[i].first = std::min(order[i].first, order[i + 1].first - kDueGap);
  }
  std::map<int, int> due;
  for (const auto& [d, lot] : order) due[lot] = d;
  std::map<int, int> slack;
  for (const auto& lay : lots) slack[lay.lot] = static_cast<int>(rng.uniform(60, 120));

  std::set<int> flexible;
  for (const auto& lay : lots) {
    for (const auto& [id, type] : lay.type_of) {
      if (!fixed_type(type)) flexible.insert(id);
    }
  }
  const auto b = generate_max_durations(draft, flexible, due, earliest, slack);
  for (auto& a : acts) {
    if (a.is_dummy()) continue;
    a.max_duration = b.at(a.id);
    if (a.kind == ActivityKind::Out) a.due_date = due.at(*a.lot);
  }

  Instance inst;
  inst.name = "case_study_s" + std::to_string(seed);
  inst.network = Network(std::move(acts), std::move(rel), 0, sink);
  const std::array<int, 8> caps = {10, 10, 30, 10, 50, 240, 220, 80};
  for (int r = 1; r <= 8; ++r) inst.resources.push_back({r, caps[r - 1], r == 6 || r == 8, true});
  inst.horizon = kHorizon;
  inst.pattern = Pattern::RealWorld;
  inst.resource_strength = Rational(0);
  inst.seed = seed;
  inst.problem_class = ProblemClass::RcmpspActf;
  return inst;
}

}  // namespace rcmpsp
