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
#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rcmpsp/oracle.hpp"
#include "rcmpsp/solver.hpp"

namespace rcmpsp {
namespace {

using Clock = std::chrono::steady_clock;

// Depth-first branch and bound over one SearchModel. With restarts, every
// improvement sends the search back to the root with the tighter cutoff.
class Search {
 public:
  Search(const Instance& inst, const SolverConfig& cfg, std::atomic<bool>& stop)
      : inst_(inst), cfg_(cfg), model_(inst, cfg), stop_(stop), t0_(Clock::now()) {}

  SolveResult run() {
    SolveResult result;
    SearchState root = model_.root();
    if (!model_.propagate(root)) {
      result.status = SolveStatus::Infeasible;
      return finish(result);
    }
    bound_ = model_.lower_bound(root);
    raise_bound(root);
    bool complete = bottom_up(root);
    while (!complete && !limit_hit_) {
      SearchState start = root;
      if (incumbent_) {
        start.cutoff = value_;
        if (!model_.propagate(start)) {
          complete = true;
          break;
        }
        bound_ = std::max(bound_, std::min(*value_, model_.lower_bound(start)));
        if (bound_ >= *value_) {
          complete = true;
          break;
        }
      }
      if (dfs(std::move(start))) {
        complete = true;
        break;
      }
    }
    if (complete) {
      result.status = incumbent_ ? SolveStatus::Optimal : SolveStatus::Infeasible;
      if (incumbent_) bound_ = *value_;
    } else {
      result.status = incumbent_ ? SolveStatus::Feasible : SolveStatus::TimeLimit;
    }
    return finish(result);
  }

 private:
  SolveResult finish(SolveResult& r) {
    if (incumbent_) {
      r.schedule = incumbent_;
      r.objective = value_;
    }
    if (r.status != SolveStatus::Infeasible) r.bound = bound_;
    r.stats = stats_;
    r.stats.seconds = std::chrono::duration<double>(Clock::now() - t0_).count();
    return r;
  }

  // Integer objectives: look for a solution worth exactly the bound, which
  // is then optimal, and raise the bound whenever that search is exhausted.
  // Gives up after kLevelNodes nodes on one level. True when solved.
  bool bottom_up(const SearchState& root) {
    constexpr std::int64_t kLevelNodes = 20000;
    if (cfg_.objective == Objective::ResourceBalance) return false;
    while (!limit_hit_) {
      SearchState start = root;
      start.cutoff = bound_ + 1;
      const bool exhausted = dfs(std::move(start), kLevelNodes);
      if (incumbent_) return *value_ <= bound_;
      if (!exhausted) return false;
      bound_ = bound_ + 1;
      // Neither objective can exceed the horizon.
      if (bound_ > Rational(inst_.horizon)) return true;
    }
    return false;
  }

  // Integer objectives: no solution is below z when the root with cutoff
  // z + 1 fails, so probe upwards from the propagated bound.
  void raise_bound(const SearchState& root) {
    if (cfg_.objective == Objective::ResourceBalance) return;
    while (!out_of_budget()) {
      SearchState probe = root;
      probe.cutoff = bound_ + 1;
      ++stats_.nodes;
      if (model_.propagate(probe)) return;
      bound_ = bound_ + 1;
    }
  }

  bool out_of_budget() {
    if (limit_hit_) return true;
    if (cfg_.node_limit > 0 && stats_.nodes >= cfg_.node_limit) limit_hit_ = true;
    // Nodes of large instances cost milliseconds, so read the clock every time.
    const double spent = std::chrono::duration<double>(Clock::now() - t0_).count();
    if (spent >= cfg_.time_limit) limit_hit_ = true;
    if (stop_.load(std::memory_order_relaxed)) limit_hit_ = true;
    return limit_hit_;
  }

  // True when the subtree was exhausted; false on a restart, a limit, or
  // after `cap` nodes when cap > 0.
  bool dfs(SearchState start, std::int64_t cap = 0) {
    std::vector<SearchState> stack;
    stack.push_back(std::move(start));
    const std::int64_t stop_at = stats_.nodes + cap;
    while (!stack.empty()) {
      if (out_of_budget()) return false;
      if (cap > 0 && stats_.nodes >= stop_at) return false;
      SearchState node = std::move(stack.back());
      stack.pop_back();
      ++stats_.nodes;
      if (incumbent_ && (!node.cutoff || *node.cutoff > *value_)) node.cutoff = value_;
      if (!model_.propagate(node)) {
        ++stats_.fails;
        continue;
      }
      if (incumbent_ && model_.lower_bound(node) >= *value_) {
        ++stats_.fails;
        continue;
      }
      if (model_.is_fixed(node)) {
        Schedule sched = model_.extract(node);
        const Rational value = evaluate_objective(inst_, sched, cfg_);
        if (incumbent_ && value >= *value_) continue;
        if (cfg_.check_incumbents) {
          const auto issues = validate_schedule(inst_, sched, cfg_);
          if (!issues.empty()) {
            throw std::logic_error("solver produced an invalid schedule: " + issues.front().text());
          }
        }
        incumbent_ = std::move(sched);
        value_ = value;
        ++stats_.incumbents;
        if (value <= bound_) return true;
        if (cfg_.restart_on_improvement) {
          ++stats_.restarts;
          return false;
        }
        continue;
      }
      auto children = model_.branch(node);
      for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
    }
    return true;
  }

  const Instance& inst_;
  const SolverConfig& cfg_;
  SearchModel model_;
  std::atomic<bool>& stop_;
  Clock::time_point t0_;
  SolveStats stats_;
  std::optional<Schedule> incumbent_;
  std::optional<Rational> value_;
  Rational bound_{0};
  bool limit_hit_ = false;
};

bool better(const SolveResult& a, const SolveResult& b) {
  auto rank = [](SolveStatus s) {
    switch (s) {
      case SolveStatus::Optimal:
      case SolveStatus::Infeasible:
        return 0;
      case SolveStatus::Feasible:
        return 1;
      case SolveStatus::TimeLimit:
        return 2;
    }
    return 3;
  };
  if (rank(a.status) != rank(b.status)) return rank(a.status) < rank(b.status);
  if (a.objective && b.objective) return *a.objective < *b.objective;
  return a.objective.has_value() && !b.objective.has_value();
}

}  // namespace

SolveResult solve(const Instance& inst, const SolverConfig& cfg) {
  check_config(inst, cfg);
  if (cfg.threads <= 1) {
    std::atomic<bool> stop{false};
    return Search(inst, cfg, stop).run();
  }
  // Portfolio of two workers: the configured search, and one with the other
  // branching order and restart policy. More threads would only duplicate
  // them. The first complete proof stops the other worker.
  std::atomic<bool> stop{false};
  std::mutex guard;
  std::optional<SolveResult> best;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  const int workers = std::min(cfg.threads, 2);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      SolverConfig mine = cfg;
      mine.threads = 1;
      if (w == 1) {
        mine.restart_on_improvement = !cfg.restart_on_improvement;
        mine.branching = cfg.branching == Branching::EndsFirst ? Branching::StartsFirst
                                                               : Branching::EndsFirst;
      }
      try {
        SolveResult r = Search(inst, mine, stop).run();
        std::lock_guard<std::mutex> lock(guard);
        if (r.status == SolveStatus::Optimal || r.status == SolveStatus::Infeasible) {
          stop.store(true);
        }
        if (!best || better(r, *best)) best = std::move(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(guard);
        if (!failure) failure = std::current_exception();
        stop.store(true);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return *best;
}

}  // namespace rcmpsp
