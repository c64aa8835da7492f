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

// Exhaustive reference solver. Deliberately shares no search code with the
// branch-and-bound solver: it enumerates route selections per lot, then
// integer starts and lengths activity by activity, and finds the optimum by
// binary search over the sorted candidate objective values with a plain
// feasibility search per candidate.

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>

#include "rcmpsp/oracle.hpp"

namespace rcmpsp {

double search_space_estimate(const Instance& inst) {
  const Network& net = inst.network;
  const bool actf = inst.problem_class == ProblemClass::RcmpspActf;
  const double horizon = inst.horizon + 1.0;
  double total = 1.0;
  for (int lot : net.lots()) {
    double lot_space = 0.0;
    for (const auto& route : enumerate_routes(net, lot)) {
      double space = actf ? horizon : 1.0;
      for (int v : route) {
        const Activity& a = net.activity(v);
        space *= actf ? (a.max_duration - a.min_duration + 1.0) : horizon;
      }
      lot_space += space;
    }
    total *= lot_space;
  }
  return total;
}

namespace {

class Enumerator {
 public:
  Enumerator(const Instance& inst, const SolverConfig& cfg, const OracleLimits& limits)
      : inst_(inst), net_(inst.network), cfg_(cfg), limits_(limits),
        actf_(inst.problem_class == ProblemClass::RcmpspActf), horizon_(inst.horizon) {
    lots_ = net_.lots();
    for (int lot : lots_) routes_.push_back(enumerate_routes(net_, lot));
    for (const auto& r : inst_.resources) {
      if (r.renewable) renewables_.push_back(r.id);
    }
    const auto slots = static_cast<std::size_t>(horizon_) + 1;
    for (int r : renewables_) profile_[r].assign(slots, 0);
  }

  // Objective candidates in ascending order.
  std::vector<Rational> candidates() const {
    std::set<Rational> c;
    switch (cfg_.objective) {
      case Objective::Makespan:
        for (int t = 0; t <= horizon_; ++t) c.insert(Rational(t));
        break;
      case Objective::TimeBalance: {
        int widest = 0;
        for (const auto& a : net_.activities()) {
          widest = std::max(widest, a.max_duration - a.min_duration);
        }
        for (int t = 0; t <= widest; ++t) c.insert(Rational(t));
        break;
      }
      case Objective::ResourceBalance:
        for (int r : inst_.balanced_resources()) {
          const int cap = inst_.resource(r).capacity;
          for (int u = 0; u <= cap; ++u) c.insert(Rational(u, cap));
        }
        break;
    }
    return {c.begin(), c.end()};
  }

  // A schedule with objective <= limit, if any.
  std::optional<Schedule> feasible(const std::optional<Rational>& limit) {
    limit_ = limit;
    cap_.clear();
    for (const auto& r : inst_.resources) {
      int c = r.capacity;
      if (limit && cfg_.objective == Objective::ResourceBalance && r.balanced) {
        c = std::min(c, static_cast<int>((*limit * Rational(r.capacity)).floor()));
      }
      cap_[r.id] = c;
    }
    makespan_cap_ = horizon_;
    if (limit && cfg_.objective == Objective::Makespan) {
      makespan_cap_ = static_cast<int>(std::min<std::int64_t>(limit->floor(), horizon_));
    }
    balance_cap_ = std::numeric_limits<int>::max();
    if (limit && cfg_.objective == Objective::TimeBalance) {
      balance_cap_ = static_cast<int>(limit->floor());
    }
    start_.clear();
    end_.clear();
    start_[net_.source_id()] = end_[net_.source_id()] = 0;
    chosen_.assign(lots_.size(), -1);
    found_.reset();
    if (!lots_can_finish()) return found_;
    lot_step(0, std::numeric_limits<int>::max(), std::numeric_limits<int>::min());
    return found_;
  }

  std::int64_t nodes() const { return nodes_; }

 private:
  void tick() {
    if (++nodes_ > limits_.max_nodes) throw LimitsExceeded("oracle node limit exceeded");
  }

  bool selected(int v) const {
    if (v == net_.source_id()) return true;
    const Activity& a = net_.activity(v);
    if (!a.lot) return false;
    const auto li = static_cast<std::size_t>(
        std::find(lots_.begin(), lots_.end(), *a.lot) - lots_.begin());
    if (chosen_[li] < 0) return false;
    const auto& route = routes_[li][static_cast<std::size_t>(chosen_[li])];
    return std::find(route.begin(), route.end(), v) != route.end();
  }

  bool counts_for_balance(const Activity& a) const {
    return !a.is_dummy() && !(cfg_.balance_flexible_only && a.is_fixed());
  }

  // Longest remaining chain of minimum durations after `v` within `route`.
  int tail(const Route& route, std::size_t pos, bool use_max) const {
    std::map<int, int> best;
    int longest = 0;
    for (std::size_t k = route.size(); k-- > pos + 1;) {
      const int u = route[k];
      int after = 0;
      for (int s : net_.successors(u)) {
        if (auto it = best.find(s); it != best.end()) after = std::max(after, it->second);
      }
      const Activity& a = net_.activity(u);
      best[u] = after + (use_max ? a.max_duration : a.min_duration);
    }
    for (int s : net_.successors(route[pos])) {
      if (auto it = best.find(s); it != best.end()) longest = std::max(longest, it->second);
    }
    return longest;
  }

  void lot_step(std::size_t li, int buf_min, int buf_max) {
    if (found_) return;
    if (li == lots_.size()) {
      finish();
      return;
    }
    const auto& routes = routes_[li];
    for (std::size_t k = 0; k < routes.size() && !found_; ++k) {
      tick();
      chosen_[li] = static_cast<int>(k);
      if (!budget_ok()) continue;
      activity_step(li, 0, buf_min, buf_max);
    }
    chosen_[li] = -1;
  }

  // Every lot needs a route whose minimum length fits before the latest
  // allowed end, which may not precede the earliest allowed delivery end.
  bool lots_can_finish() const {
    for (const auto& routes : routes_) {
      bool any = false;
      for (const auto& route : routes) {
        int end_lo = 0;
        int end_hi = std::min(horizon_, makespan_cap_);
        const Activity& t = net_.activity(route.back());
        if (actf_ && t.due_date) {
          auto [dlo, dhi] = due_window(cfg_.scenario, *t.due_date, horizon_);
          end_lo = dlo;
          end_hi = std::min(end_hi, dhi);
        }
        int length = 0;
        for (int v : route) length += net_.activity(v).min_duration;
        if (length <= end_hi && end_lo <= end_hi) any = true;
      }
      if (!any) return false;
    }
    return true;
  }

  bool budget_ok() const {
    for (const auto& r : inst_.resources) {
      if (r.renewable) continue;
      std::int64_t used = 0;
      for (std::size_t li = 0; li < lots_.size(); ++li) {
        if (chosen_[li] < 0) continue;
        for (int v : routes_[li][static_cast<std::size_t>(chosen_[li])]) {
          used += net_.activity(v).demand(r.id);
        }
      }
      if (used > r.capacity) return false;
    }
    return true;
  }

  bool fits(const Activity& a, int from, int to) const {
    for (const auto& [r, q] : a.demands) {
      auto it = profile_.find(r);
      if (it == profile_.end() || q == 0) continue;
      for (int t = from; t < to; ++t) {
        if (it->second[t] + q > cap_.at(r)) return false;
      }
    }
    return true;
  }

  void place(const Activity& a, int from, int to, int sign) {
    for (const auto& [r, q] : a.demands) {
      auto it = profile_.find(r);
      if (it == profile_.end()) continue;
      for (int t = from; t < to; ++t) it->second[t] += sign * q;
    }
  }

  void activity_step(std::size_t li, std::size_t pos, int buf_min, int buf_max) {
    const auto& route = routes_[li][static_cast<std::size_t>(chosen_[li])];
    if (pos == route.size()) {
      lot_step(li + 1, buf_min, buf_max);
      return;
    }
    const int v = route[pos];
    const Activity& a = net_.activity(v);
    const int lot = lots_[li];

    // Start range from the selected predecessors.
    int lo = 0;
    int hi = horizon_;
    std::optional<int> forced;
    for (int p : net_.predecessors(v)) {
      const Activity& pa = net_.activity(p);
      if (pa.lot && *pa.lot > lot) throw ModelError("oracle: lots must be ordered by precedence");
      if (!selected(p)) continue;
      if (!end_.count(p)) throw ModelError("oracle: predecessor scheduled after its successor");
      const bool same_lot = !pa.is_dummy() && pa.lot && *pa.lot == lot;
      if (actf_ && same_lot) {
        if (forced && *forced != end_[p]) return;
        forced = end_[p];
      } else {
        lo = std::max(lo, end_[p]);
      }
    }
    if (forced) {
      if (*forced < lo) return;
      lo = hi = *forced;
    }
    const int min_tail = tail(route, pos, false);
    const int max_tail = tail(route, pos, true);
    // Route terminal due window (ACTF deliveries).
    int end_lo = 0;
    int end_hi = std::min(horizon_, makespan_cap_);
    const int terminal = route.back();
    if (actf_) {
      const Activity& t = net_.activity(terminal);
      if (t.due_date) {
        auto [dlo, dhi] = due_window(cfg_.scenario, *t.due_date, horizon_);
        end_lo = dlo;
        end_hi = std::min(end_hi, dhi);
      }
    }
    for (int s = lo; s <= hi; ++s) {
      if (s + a.min_duration + min_tail > end_hi) break;
      for (int len = a.min_duration; len <= a.max_duration; ++len) {
        tick();
        const int e = s + len;
        if (e + min_tail > end_hi) break;
        if (actf_ && e + max_tail < end_lo) continue;
        if (pos + 1 == route.size() && (e < end_lo || e > end_hi)) continue;
        int nmin = buf_min;
        int nmax = buf_max;
        if (counts_for_balance(a)) {
          nmin = std::min(nmin, len - a.min_duration);
          nmax = std::max(nmax, len - a.min_duration);
          if (nmax - nmin > balance_cap_) continue;
        }
        if (!fits(a, s, e)) continue;
        place(a, s, e, +1);
        start_[v] = s;
        end_[v] = e;
        activity_step(li, pos + 1, nmin, nmax);
        start_.erase(v);
        end_.erase(v);
        place(a, s, e, -1);
        if (found_) return;
      }
    }
  }

  void finish() {
    const int sink = net_.sink_id();
    int sink_start = 0;
    for (int p : net_.predecessors(sink)) {
      if (selected(p)) sink_start = std::max(sink_start, end_.at(p));
    }
    if (sink_start > makespan_cap_) return;
    Schedule s;
    for (const auto& a : net_.activities()) {
      ScheduledActivity e;
      e.id = a.id;
      if (a.id == net_.source_id()) {
        e.present = true;
      } else if (a.id == sink) {
        e.present = true;
        e.start = e.end = sink_start;
      } else if (auto it = start_.find(a.id); it != start_.end()) {
        e.present = true;
        e.start = it->second;
        e.end = end_.at(a.id);
      }
      s.entries.push_back(e);
    }
    if (limit_ && evaluate_objective(inst_, s, cfg_) > *limit_) return;
    found_ = std::move(s);
  }

  const Instance& inst_;
  const Network& net_;
  const SolverConfig& cfg_;
  const OracleLimits& limits_;
  const bool actf_;
  const int horizon_;
  std::vector<int> lots_;
  std::vector<std::vector<Route>> routes_;
  std::vector<int> renewables_;
  std::map<int, std::vector<int>> profile_;
  std::map<int, int> cap_;
  std::optional<Rational> limit_;
  int makespan_cap_ = 0;
  int balance_cap_ = 0;
  std::vector<int> chosen_;
  std::map<int, int> start_;
  std::map<int, int> end_;
  std::optional<Schedule> found_;
  std::int64_t nodes_ = 0;
};

}  // namespace

SolveResult brute_force_solve(const Instance& inst, const SolverConfig& cfg,
                              const OracleLimits& limits) {
  check_config(inst, cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const double space = search_space_estimate(inst);
  if (space > limits.max_space) {
    throw LimitsExceeded("search space estimate " + std::to_string(space) + " above limit");
  }
  Enumerator en(inst, cfg, limits);
  SolveResult result;
  auto best = en.feasible(std::nullopt);
  if (!best) {
    result.status = SolveStatus::Infeasible;
  } else {
    const auto cands = en.candidates();
    // Smallest candidate index with a feasible schedule; the last one
    // always qualifies once any schedule exists.
    std::size_t lo = 0;
    std::size_t hi = cands.size();
    Rational value = evaluate_objective(inst, *best, cfg);
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cands[mid] >= value) {
        hi = mid;
        continue;
      }
      if (auto s = en.feasible(cands[mid])) {
        best = std::move(s);
        value = evaluate_objective(inst, *best, cfg);
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    result.status = SolveStatus::Optimal;
    result.objective = value;
    result.bound = value;
    result.schedule = std::move(best);
  }
  result.stats.nodes = en.nodes();
  result.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace rcmpsp
