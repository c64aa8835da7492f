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

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rcmpsp/cp_network.hpp"
#include "rcmpsp/solver.hpp"

namespace rcmpsp {
namespace {

constexpr int kNone = std::numeric_limits<int>::min();
constexpr int kInf = std::numeric_limits<int>::max();

struct RouteLink {
  int route = 0;
  std::vector<int> preds;  // activity indices inside the route
  std::vector<int> succs;
};

struct Demand {
  int resource = 0;  // index into renewables
  int quantity = 0;
};

struct Var {
  int id = 0;
  int a = 0, b = 0;
  int lot = 0;                   // lot index
  std::uint64_t in_routes = 0;   // routes of the lot containing the activity
  std::vector<RouteLink> links;
  std::vector<int> ext_preds, ext_succs;  // real activities of other lots
  bool sink_pred = false;
  std::vector<Demand> demands;
  std::optional<std::pair<int, int>> due;  // end window
  bool balance = false;          // counted by TimeBalance
};

struct Lot {
  int id = 0;
  std::vector<std::vector<int>> routes;  // activity indices, topological order
  std::vector<int> preference;           // route indices in branching order
  std::vector<std::vector<std::int64_t>> consumption;  // [route][non-renewable]
};

struct Renewable {
  int id = 0;
  int capacity = 0;
  bool balanced = false;
};

}  // namespace

struct SearchModel::Impl {
  const Instance& inst;
  SolverConfig cfg;
  bool actf = true;
  int horizon = 0;
  std::vector<int> ids;
  std::map<int, int> index;
  std::vector<Var> vars;
  std::vector<int> forward;  // topological order of indices
  std::vector<Lot> lots;
  std::vector<Renewable> renewables;
  std::vector<std::pair<int, int>> budgets;  // non-renewable (id, capacity)

  Impl(const Instance& i, const SolverConfig& c) : inst(i), cfg(c) {}

  Presence presence(const SearchState& s, int k) const {
    const std::uint64_t mask = s.routes[vars[k].lot];
    const std::uint64_t in = vars[k].in_routes;
    if ((mask & in) == 0) return Presence::Absent;
    if ((mask & ~in) == 0) return Presence::Present;
    return Presence::Undecided;
  }

  void build();
  bool propagate(SearchState& s) const;
  bool normalize(SearchState& s, int k, bool& changed) const;
  bool precedence(SearchState& s, bool& changed) const;
  bool routes_check(SearchState& s, bool& changed) const;
  bool objective(SearchState& s, bool& changed) const;
  bool timetable(SearchState& s, bool& changed) const;
  bool energetic(SearchState& s, bool& changed) const;
  bool budget(SearchState& s, bool& changed) const;
  std::vector<int> capacities(const SearchState& s) const;
  std::vector<int> profile(const SearchState& s, int r) const;
};

void SearchModel::Impl::build() {
  check_config(inst, cfg);
  const auto problems = validate_instance(inst);
  if (!problems.empty()) throw ModelError("invalid instance: " + problems.front());
  const Network& net = inst.network;
  actf = inst.problem_class == ProblemClass::RcmpspActf;
  horizon = inst.horizon;

  for (const auto& a : net.activities()) {
    if (a.is_dummy()) continue;
    if (!a.lot) throw ModelError("activity " + std::to_string(a.id) + " has no lot");
    index[a.id] = static_cast<int>(ids.size());
    ids.push_back(a.id);
  }
  for (int v : net.topological_order()) {
    if (auto it = index.find(v); it != index.end()) forward.push_back(it->second);
  }

  for (const auto& r : inst.resources) {
    if (r.renewable) {
      renewables.push_back({r.id, r.capacity, r.balanced});
    } else {
      budgets.emplace_back(r.id, r.capacity);
    }
  }

  vars.resize(ids.size());
  std::map<int, int> lot_index;
  for (int lot : net.lots()) {
    lot_index[lot] = static_cast<int>(lots.size());
    lots.push_back({lot, {}, {}, {}});
  }
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const Activity& a = net.activity(ids[k]);
    Var& v = vars[k];
    v.id = a.id;
    v.a = a.min_duration;
    v.b = std::min(a.max_duration, horizon);
    v.lot = lot_index.at(*a.lot);
    v.balance = !(cfg.balance_flexible_only && a.is_fixed());
    for (std::size_t r = 0; r < renewables.size(); ++r) {
      const int q = a.demand(renewables[r].id);
      if (q > 0) v.demands.push_back({static_cast<int>(r), q});
    }
    if (actf && a.due_date) v.due = due_window(cfg.scenario, *a.due_date, horizon);
    for (int p : net.predecessors(a.id)) {
      const Activity& pa = net.activity(p);
      if (!pa.is_dummy() && *pa.lot != *a.lot) v.ext_preds.push_back(index.at(p));
    }
    for (int s : net.successors(a.id)) {
      if (s == net.sink_id()) {
        v.sink_pred = true;
        continue;
      }
      const Activity& sa = net.activity(s);
      if (!sa.is_dummy() && *sa.lot != *a.lot) v.ext_succs.push_back(index.at(s));
    }
  }

  const CpNetwork cp = to_cp_network(net);
  for (auto& lot : lots) {
    const auto routes = enumerate_cp_routes(cp, lot.id);
    if (routes.size() > 64) throw ModelError("more than 64 routes in lot " + std::to_string(lot.id));
    const int li = lot_index.at(lot.id);
    for (std::size_t r = 0; r < routes.size(); ++r) {
      std::vector<int> members;
      for (int id : routes[r]) members.push_back(index.at(id));
      for (int k : members) {
        vars[k].in_routes |= std::uint64_t{1} << r;
        RouteLink link;
        link.route = static_cast<int>(r);
        for (int p : net.predecessors(ids[k])) {
          auto it = index.find(p);
          if (it != index.end() && vars[it->second].lot == li &&
              std::find(members.begin(), members.end(), it->second) != members.end()) {
            link.preds.push_back(it->second);
          }
        }
        for (int s : net.successors(ids[k])) {
          auto it = index.find(s);
          if (it != index.end() && vars[it->second].lot == li &&
              std::find(members.begin(), members.end(), it->second) != members.end()) {
            link.succs.push_back(it->second);
          }
        }
        vars[k].links.push_back(std::move(link));
      }
      std::vector<std::int64_t> use;
      for (const auto& [rid, cap] : budgets) {
        std::int64_t sum = 0;
        for (int k : members) sum += net.activity(ids[k]).demand(rid);
        use.push_back(sum);
      }
      lot.consumption.push_back(std::move(use));
      lot.routes.push_back(std::move(members));
    }
    std::vector<std::int64_t> length(lot.routes.size(), 0);
    for (std::size_t r = 0; r < lot.routes.size(); ++r) {
      for (int k : lot.routes[r]) length[r] += vars[k].a;
      lot.preference.push_back(static_cast<int>(r));
    }
    std::stable_sort(lot.preference.begin(), lot.preference.end(),
                     [&](int x, int y) { return length[x] < length[y]; });
  }
}

bool SearchModel::Impl::normalize(SearchState& s, int k, bool& changed) const {
  for (int round = 0; round < 3; ++round) {
    const int est = std::max(s.est[k], s.eet[k] - s.lmax[k]);
    const int lst = std::min(s.lst[k], s.let[k] - s.lmin[k]);
    const int eet = std::max(s.eet[k], est + s.lmin[k]);
    const int let = std::min(s.let[k], lst + s.lmax[k]);
    const int lmin = std::max(s.lmin[k], eet - lst);
    const int lmax = std::min(s.lmax[k], let - est);
    const bool same = est == s.est[k] && lst == s.lst[k] && eet == s.eet[k] &&
                      let == s.let[k] && lmin == s.lmin[k] && lmax == s.lmax[k];
    s.est[k] = est;
    s.lst[k] = lst;
    s.eet[k] = eet;
    s.let[k] = let;
    s.lmin[k] = lmin;
    s.lmax[k] = lmax;
    if (est > lst || eet > let || lmin > lmax) return false;
    if (same) break;
    changed = true;
  }
  return true;
}

bool SearchModel::Impl::precedence(SearchState& s, bool& changed) const {
  // Forward: start and end lower bounds, plus the start upper bound under
  // end-at-start relations.
  for (int k : forward) {
    const Presence pk = presence(s, k);
    if (pk == Presence::Absent) continue;
    const Var& v = vars[k];
    const std::uint64_t mask = s.routes[v.lot] & v.in_routes;
    int lo = 0;
    for (int p : v.ext_preds) {
      if (presence(s, p) == Presence::Present) lo = std::max(lo, s.eet[p]);
    }
    int route_lo = kInf;
    int route_hi = kNone;
    bool all_linked = true;
    for (const auto& link : v.links) {
      if (!(mask >> link.route & 1)) continue;
      if (link.preds.empty()) {
        route_lo = std::min(route_lo, 0);
        all_linked = false;
        continue;
      }
      int need = 0;
      int cap = kInf;
      for (int p : link.preds) {
        need = std::max(need, s.eet[p]);
        cap = std::min(cap, s.let[p]);
      }
      route_lo = std::min(route_lo, need);
      route_hi = std::max(route_hi, cap);
    }
    if (route_lo != kInf) lo = std::max(lo, route_lo);
    if (lo > s.est[k]) {
      s.est[k] = lo;
      changed = true;
    }
    if (actf && all_linked && route_hi != kNone && route_hi < s.lst[k]) {
      s.lst[k] = route_hi;
      changed = true;
    }
    if (!normalize(s, k, changed)) {
      if (pk == Presence::Present) return false;
      s.routes[v.lot] &= ~v.in_routes;
      changed = true;
    }
  }
  // Backward: end upper bounds, plus the end lower bound under end-at-start.
  int sink_lo = 0;
  for (auto it = forward.rbegin(); it != forward.rend(); ++it) {
    const int k = *it;
    const Presence pk = presence(s, k);
    if (pk == Presence::Absent) continue;
    const Var& v = vars[k];
    const std::uint64_t mask = s.routes[v.lot] & v.in_routes;
    int hi = horizon;
    if (v.sink_pred) hi = std::min(hi, s.sink_lst);
    for (int q : v.ext_succs) {
      if (presence(s, q) == Presence::Present) hi = std::min(hi, s.lst[q]);
    }
    if (v.due) hi = std::min(hi, v.due->second);
    int route_hi = kNone;
    int route_lo = kInf;
    bool all_linked = true;
    for (const auto& link : v.links) {
      if (!(mask >> link.route & 1)) continue;
      if (link.succs.empty()) {
        route_hi = kInf;
        all_linked = false;
        continue;
      }
      int cap = kInf;
      int need = 0;
      for (int q : link.succs) {
        cap = std::min(cap, s.lst[q]);
        need = std::max(need, s.est[q]);
      }
      route_hi = std::max(route_hi, cap);
      route_lo = std::min(route_lo, need);
    }
    if (route_hi != kNone && route_hi != kInf) hi = std::min(hi, route_hi);
    if (hi < s.let[k]) {
      s.let[k] = hi;
      changed = true;
    }
    int lo = v.due ? v.due->first : 0;
    if (actf && all_linked && route_lo != kInf) lo = std::max(lo, route_lo);
    if (lo > s.eet[k]) {
      s.eet[k] = lo;
      changed = true;
    }
    if (!normalize(s, k, changed)) {
      if (pk == Presence::Present) return false;
      s.routes[v.lot] &= ~v.in_routes;
      changed = true;
      continue;
    }
    if (v.sink_pred && presence(s, k) == Presence::Present) sink_lo = std::max(sink_lo, s.eet[k]);
  }
  if (sink_lo > s.sink_est) {
    s.sink_est = sink_lo;
    changed = true;
  }
  return s.sink_est <= s.sink_lst;
}

bool SearchModel::Impl::routes_check(SearchState& s, bool& changed) const {
  for (std::size_t li = 0; li < lots.size(); ++li) {
    std::uint64_t mask = s.routes[li];
    for (std::uint64_t bits = mask; bits; bits &= bits - 1) {
      const int r = std::countr_zero(bits);
      bool ok = true;
      for (int k : lots[li].routes[r]) {
        for (const auto& link : vars[k].links) {
          if (link.route != r) continue;
          for (int q : link.succs) {
            if (s.eet[k] > s.lst[q] || (actf && s.est[q] > s.let[k])) ok = false;
          }
        }
        if (!ok) break;
      }
      if (!ok) mask &= ~(std::uint64_t{1} << r);
    }
    if (mask != s.routes[li]) {
      s.routes[li] = mask;
      changed = true;
    }
    if (mask == 0) return false;
  }
  return true;
}

bool SearchModel::Impl::budget(SearchState& s, bool& changed) const {
  for (std::size_t b = 0; b < budgets.size(); ++b) {
    std::vector<std::int64_t> least(lots.size(), 0);
    std::int64_t total = 0;
    for (std::size_t li = 0; li < lots.size(); ++li) {
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (std::uint64_t bits = s.routes[li]; bits; bits &= bits - 1) {
        best = std::min(best, lots[li].consumption[std::countr_zero(bits)][b]);
      }
      least[li] = best;
      total += best;
    }
    const std::int64_t cap = budgets[b].second;
    if (total > cap) return false;
    for (std::size_t li = 0; li < lots.size(); ++li) {
      std::uint64_t mask = s.routes[li];
      for (std::uint64_t bits = mask; bits; bits &= bits - 1) {
        const int r = std::countr_zero(bits);
        if (total - least[li] + lots[li].consumption[r][b] > cap) {
          mask &= ~(std::uint64_t{1} << r);
        }
      }
      if (mask != s.routes[li]) {
        s.routes[li] = mask;
        changed = true;
      }
      if (mask == 0) return false;
    }
  }
  return true;
}

std::vector<int> SearchModel::Impl::capacities(const SearchState& s) const {
  std::vector<int> caps;
  for (const auto& r : renewables) {
    int c = r.capacity;
    if (s.cutoff && actf && cfg.objective == Objective::ResourceBalance && r.balanced) {
      c = std::min<std::int64_t>(c, (*s.cutoff * Rational(r.capacity)).ceil() - 1);
    }
    caps.push_back(c);
  }
  return caps;
}

std::vector<int> SearchModel::Impl::profile(const SearchState& s, int r) const {
  std::vector<int> prof(static_cast<std::size_t>(std::max(horizon, 0)), 0);
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (presence(s, static_cast<int>(k)) != Presence::Present) continue;
    if (s.lst[k] >= s.eet[k]) continue;
    for (const auto& d : vars[k].demands) {
      if (d.resource != r) continue;
      for (int t = s.lst[k]; t < s.eet[k]; ++t) prof[t] += d.quantity;
    }
  }
  return prof;
}

bool SearchModel::Impl::objective(SearchState& s, bool& changed) const {
  if (!s.cutoff) return true;
  const Rational& z = *s.cutoff;
  switch (cfg.objective) {
    case Objective::Makespan: {
      const int hi = static_cast<int>(z.ceil()) - 1;
      if (hi < s.sink_lst) {
        s.sink_lst = hi;
        changed = true;
      }
      return s.sink_est <= s.sink_lst;
    }
    case Objective::TimeBalance: {
      const int limit = static_cast<int>(z.ceil()) - 1;
      if (limit < 0) return false;
      int low_b = kNone;
      int up_s = kInf;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        if (!vars[k].balance || presence(s, static_cast<int>(k)) != Presence::Present) continue;
        low_b = std::max(low_b, s.lmin[k] - vars[k].a);
        up_s = std::min(up_s, s.lmax[k] - vars[k].a);
      }
      if (low_b == kNone) return true;
      if (low_b - up_s > limit) return false;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        const int ki = static_cast<int>(k);
        const Presence p = presence(s, ki);
        if (!vars[k].balance || p == Presence::Absent) continue;
        const int lmax = vars[k].a + up_s + limit;
        const int lmin = vars[k].a + low_b - limit;
        if (lmax < s.lmax[k]) {
          s.lmax[k] = lmax;
          changed = true;
        }
        if (lmin > s.lmin[k]) {
          s.lmin[k] = lmin;
          changed = true;
        }
        if (!normalize(s, ki, changed)) {
          if (p == Presence::Present) return false;
          s.routes[vars[k].lot] &= ~vars[k].in_routes;
          changed = true;
        }
      }
      return true;
    }
    case Objective::ResourceBalance: {
      for (int c : capacities(s)) {
        if (c < 0) return false;
      }
      return true;
    }
  }
  return true;
}

bool SearchModel::Impl::timetable(SearchState& s, bool& changed) const {
  if (horizon <= 0) return true;
  const auto caps = capacities(s);
  std::vector<std::vector<int>> profs;
  for (std::size_t r = 0; r < renewables.size(); ++r) {
    profs.push_back(profile(s, static_cast<int>(r)));
    for (int t = 0; t < horizon; ++t) {
      if (profs[r][t] > caps[r]) return false;
    }
  }
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const int ki = static_cast<int>(k);
    const Var& v = vars[k];
    if (v.demands.empty() || s.lmin[k] == 0) continue;
    const Presence p = presence(s, ki);
    if (p == Presence::Absent) continue;
    const bool own = p == Presence::Present && s.lst[k] < s.eet[k];
    const int own_lo = s.lst[k];
    const int own_hi = s.eet[k];
    const int len = s.lmin[k];
    // Latest slot in [t, t + len) that cannot take the activity, or -1.
    auto blocked = [&](int t) {
      for (int u = t + len - 1; u >= t; --u) {
        if (u >= horizon) return u;
        for (const auto& d : v.demands) {
          int load = profs[d.resource][u];
          if (own && u >= own_lo && u < own_hi) load -= d.quantity;
          if (load + d.quantity > caps[d.resource]) return u;
        }
      }
      return -1;
    };
    auto blocked_first = [&](int t) {
      for (int u = t; u < t + len; ++u) {
        if (u >= horizon) return u;
        for (const auto& d : v.demands) {
          int load = profs[d.resource][u];
          if (own && u >= own_lo && u < own_hi) load -= d.quantity;
          if (load + d.quantity > caps[d.resource]) return u;
        }
      }
      return -1;
    };
    int est = s.est[k];
    while (est <= s.lst[k]) {
      const int u = blocked(est);
      if (u < 0) break;
      est = u + 1;
    }
    int lst = s.lst[k];
    while (lst >= est) {
      const int u = blocked_first(lst);
      if (u < 0) break;
      lst = u - len;
    }
    bool empty = est > lst;
    if (!empty && (est != s.est[k] || lst != s.lst[k])) {
      s.est[k] = est;
      s.lst[k] = lst;
      changed = true;
      empty = !normalize(s, ki, changed);
    }
    if (empty) {
      if (p == Presence::Present) return false;
      s.routes[v.lot] &= ~v.in_routes;
      changed = true;
    }
  }
  return true;
}

// Energetic reasoning over time windows [t1, t2). Every present activity
// spends at least its least possible overlap with the window, using minimum
// length and the leftmost or rightmost placement. Too much work fails the
// node. An activity whose own left (right) part does not fit next to the
// others' minimum work is pushed to start late (end early) enough.
bool SearchModel::Impl::energetic(SearchState& s, bool& changed) const {
  const auto caps = capacities(s);
  struct Task {
    int k, left, right, p, q;
  };
  for (std::size_t r = 0; r < renewables.size(); ++r) {
    std::vector<Task> tasks;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (s.lmin[k] == 0 || presence(s, static_cast<int>(k)) != Presence::Present) continue;
      for (const auto& d : vars[k].demands) {
        if (d.resource != static_cast<int>(r)) continue;
        const int p = s.lmin[k];
        tasks.push_back({static_cast<int>(k), std::max(s.est[k], s.eet[k] - p), s.lst[k], p,
                         d.quantity});
      }
    }
    if (tasks.size() < 2) continue;
    std::vector<int> starts, ends;
    for (const auto& t : tasks) {
      starts.insert(starts.end(), {t.left, t.right, t.left + t.p});
      ends.insert(ends.end(), {t.left + t.p, t.right + t.p, t.right});
    }
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    std::vector<std::int64_t> work(tasks.size());
    for (int t1 : starts) {
      for (int t2 : ends) {
        if (t2 <= t1) continue;
        const std::int64_t room = static_cast<std::int64_t>(caps[r]) * (t2 - t1);
        std::int64_t need = 0;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
          const Task& t = tasks[i];
          const int overlap = std::min({t2 - t1, t.p, std::max(0, t.left + t.p - t1),
                                        std::max(0, t2 - t.right)});
          work[i] = static_cast<std::int64_t>(overlap) * t.q;
          need += work[i];
        }
        if (need > room) return false;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
          const Task& t = tasks[i];
          const std::int64_t slack = room - need + work[i];
          const int fit = static_cast<int>(slack / t.q);  // units that fit in the window
          if (fit >= t.p) continue;
          const int k = t.k;
          // Part after t1 when started as early as possible.
          const int after = std::max(0, t.left + t.p - std::max(t1, t.left));
          if (std::min(after, t2 - t1) > fit && t2 - fit > s.est[k]) {
            s.est[k] = t2 - fit;
            changed = true;
            if (!normalize(s, k, changed)) return false;
          }
          // Part before t2 when started as late as possible.
          const int before = std::max(0, std::min(t2, t.right + t.p) - t.right);
          if (std::min(before, t2 - t1) > fit && t1 + fit < s.let[k]) {
            s.let[k] = t1 + fit;
            changed = true;
            if (!normalize(s, k, changed)) return false;
          }
        }
      }
    }
  }
  return true;
}

bool SearchModel::Impl::propagate(SearchState& s) const {
  for (std::size_t li = 0; li < lots.size(); ++li) {
    if (s.routes[li] == 0) return false;
  }
  for (int iter = 0;; ++iter) {
    bool changed = false;
    if (!objective(s, changed)) return false;
    if (!precedence(s, changed)) return false;
    if (!routes_check(s, changed)) return false;
    if (!budget(s, changed)) return false;
    if (!changed && !timetable(s, changed)) return false;
    if (!changed && !energetic(s, changed)) return false;
    for (std::size_t li = 0; li < lots.size(); ++li) {
      if (s.routes[li] == 0) return false;
    }
    if (!changed) return true;
  }
}

SearchModel::SearchModel(const Instance& inst, const SolverConfig& cfg)
    : impl_(std::make_unique<Impl>(inst, cfg)) {
  impl_->build();
}

SearchModel::~SearchModel() = default;

const std::vector<int>& SearchModel::activity_ids() const { return impl_->ids; }

SearchState SearchModel::root() const {
  const auto& m = *impl_;
  SearchState s;
  const std::size_t n = m.vars.size();
  s.est.assign(n, 0);
  s.lst.resize(n);
  s.eet.resize(n);
  s.let.assign(n, m.horizon);
  s.lmin.resize(n);
  s.lmax.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.lst[k] = m.horizon - m.vars[k].a;
    s.eet[k] = m.vars[k].a;
    s.lmin[k] = m.vars[k].a;
    s.lmax[k] = m.vars[k].b;
  }
  for (const auto& lot : m.lots) {
    const auto count = lot.routes.size();
    s.routes.push_back(count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1);
  }
  s.sink_est = 0;
  s.sink_lst = m.horizon;
  return s;
}

bool SearchModel::propagate(SearchState& state) const { return impl_->propagate(state); }

bool SearchModel::is_fixed(const SearchState& s) const {
  const auto& m = *impl_;
  for (auto mask : s.routes) {
    if (std::popcount(mask) != 1) return false;
  }
  for (std::size_t k = 0; k < m.vars.size(); ++k) {
    if (m.presence(s, static_cast<int>(k)) != Presence::Present) continue;
    if (s.est[k] != s.lst[k] || s.lmin[k] != s.lmax[k]) return false;
  }
  return true;
}

std::vector<SearchState> SearchModel::branch(const SearchState& s) const {
  const auto& m = *impl_;
  std::vector<SearchState> out;
  for (std::size_t li = 0; li < m.lots.size(); ++li) {
    const std::uint64_t mask = s.routes[li];
    if (std::popcount(mask) <= 1) continue;
    for (int r : m.lots[li].preference) {
      const std::uint64_t bit = std::uint64_t{1} << r;
      if (!(mask & bit)) continue;
      SearchState take = s;
      take.routes[li] = bit;
      SearchState skip = s;
      skip.routes[li] = mask & ~bit;
      out.push_back(std::move(take));
      out.push_back(std::move(skip));
      return out;
    }
  }
  int pick = -1;
  if (m.cfg.branching == Branching::EndsFirst) {
    // Ends, latest first: fix the end at its latest value or lower it.
    for (std::size_t k = 0; k < m.vars.size(); ++k) {
      if (m.presence(s, static_cast<int>(k)) != Presence::Present || s.eet[k] == s.let[k]) continue;
      if (pick < 0 || s.let[k] > s.let[pick]) pick = static_cast<int>(k);
    }
    if (pick >= 0) {
      SearchState left = s;
      left.eet[pick] = s.let[pick];
      SearchState right = s;
      right.let[pick] = s.let[pick] - 1;
      out.push_back(std::move(left));
      out.push_back(std::move(right));
      return out;
    }
  }
  // Starts, earliest first; with ends fixed only lot entries remain.
  for (std::size_t k = 0; k < m.vars.size(); ++k) {
    if (m.presence(s, static_cast<int>(k)) != Presence::Present || s.est[k] == s.lst[k]) continue;
    if (pick < 0 || s.est[k] < s.est[pick]) pick = static_cast<int>(k);
  }
  if (pick >= 0) {
    SearchState left = s;
    left.lst[pick] = s.est[pick];
    SearchState right = s;
    right.est[pick] = s.est[pick] + 1;
    out.push_back(std::move(left));
    out.push_back(std::move(right));
    return out;
  }
  for (std::size_t k = 0; k < m.vars.size(); ++k) {
    if (m.presence(s, static_cast<int>(k)) != Presence::Present || s.lmin[k] == s.lmax[k]) {
      continue;
    }
    SearchState left = s;
    left.lmax[k] = s.lmin[k];
    SearchState right = s;
    right.lmin[k] = s.lmin[k] + 1;
    out.push_back(std::move(left));
    out.push_back(std::move(right));
    return out;
  }
  throw std::logic_error("branch called on a fixed state");
}

Rational SearchModel::lower_bound(const SearchState& s) const {
  const auto& m = *impl_;
  switch (m.cfg.objective) {
    case Objective::Makespan:
      return Rational(s.sink_est);
    case Objective::TimeBalance: {
      int low_b = kNone;
      int up_s = kInf;
      for (std::size_t k = 0; k < m.vars.size(); ++k) {
        if (!m.vars[k].balance || m.presence(s, static_cast<int>(k)) != Presence::Present) {
          continue;
        }
        low_b = std::max(low_b, s.lmin[k] - m.vars[k].a);
        up_s = std::min(up_s, s.lmax[k] - m.vars[k].a);
      }
      if (low_b == kNone) return Rational(0);
      return Rational(std::max(0, low_b - up_s));
    }
    case Objective::ResourceBalance: {
      Rational best(0);
      for (std::size_t r = 0; r < m.renewables.size(); ++r) {
        if (!m.renewables[r].balanced) continue;
        const auto prof = m.profile(s, static_cast<int>(r));
        int peak = prof.empty() ? 0 : *std::max_element(prof.begin(), prof.end());
        std::int64_t area = 0;
        int lo = kInf;
        int hi = kNone;
        for (std::size_t k = 0; k < m.vars.size(); ++k) {
          if (m.presence(s, static_cast<int>(k)) != Presence::Present) continue;
          for (const auto& d : m.vars[k].demands) {
            if (d.resource != static_cast<int>(r) || s.lmin[k] == 0) continue;
            area += static_cast<std::int64_t>(d.quantity) * s.lmin[k];
            lo = std::min(lo, s.est[k]);
            hi = std::max(hi, s.let[k]);
          }
        }
        if (area > 0 && hi > lo) {
          peak = std::max<int>(peak, static_cast<int>(Rational(area, hi - lo).ceil()));
        }
        best = std::max(best, Rational(peak, m.renewables[r].capacity));
      }
      return best;
    }
  }
  return Rational(0);
}

Presence SearchModel::presence(const SearchState& s, int id) const {
  return impl_->presence(s, impl_->index.at(id));
}

IntervalVar SearchModel::var(const SearchState& s, int id) const {
  const int k = impl_->index.at(id);
  return {id, impl_->presence(s, k), s.est[k], s.lst[k], s.eet[k], s.let[k], s.lmin[k],
          s.lmax[k]};
}

std::vector<int> SearchModel::timetable(const SearchState& s, int r) const {
  const auto& m = *impl_;
  for (std::size_t i = 0; i < m.renewables.size(); ++i) {
    if (m.renewables[i].id == r) return m.profile(s, static_cast<int>(i));
  }
  throw ModelError("no renewable resource " + std::to_string(r));
}

Schedule SearchModel::extract(const SearchState& s) const {
  const auto& m = *impl_;
  if (!is_fixed(s)) throw std::logic_error("extract needs a fixed state");
  const Network& net = m.inst.network;
  Schedule out;
  for (const auto& a : net.activities()) {
    if (a.is_meta()) continue;
    ScheduledActivity e;
    e.id = a.id;
    if (a.id == net.source_id()) {
      e.present = true;
    } else if (a.id == net.sink_id()) {
      e.present = true;
      e.start = e.end = s.sink_est;
    } else {
      const int k = m.index.at(a.id);
      if (m.presence(s, k) == Presence::Present) {
        e.present = true;
        e.start = s.est[k];
        e.end = s.est[k] + s.lmin[k];
      }
    }
    out.entries.push_back(e);
  }
  return out;
}

}  // namespace rcmpsp
