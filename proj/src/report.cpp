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

#include "rcmpsp/report.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <limits>
#include <regex>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace rcmpsp {
namespace {

std::string opt_str(const std::optional<Rational>& r) { return r ? r->str() : std::string(); }

std::string fixed(double x, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << x;
  return out.str();
}

bool proven(SolveStatus s) { return s == SolveStatus::Optimal || s == SolveStatus::Infeasible; }

// Present, positive-length, non-dummy activities keyed by lot (-1 for none)
// and packed into lanes so that bars in one lane never overlap.
struct Bar {
  int id;
  int start;
  int end;
};
using Lanes = std::vector<std::vector<Bar>>;

std::map<int, Lanes> pack(const Instance& inst, const Schedule& sched) {
  std::map<int, std::vector<Bar>> by_lot;
  for (const auto& e : sched.entries) {
    if (!e.present || e.length() <= 0 || !inst.network.contains(e.id)) continue;
    const Activity& a = inst.network.activity(e.id);
    if (a.is_dummy()) continue;
    by_lot[a.lot.value_or(-1)].push_back({e.id, e.start, e.end});
  }
  std::map<int, Lanes> out;
  for (auto& [lot, bars] : by_lot) {
    std::sort(bars.begin(), bars.end(), [](const Bar& x, const Bar& y) {
      return std::tie(x.start, x.end, x.id) < std::tie(y.start, y.end, y.id);
    });
    Lanes lanes;
    for (const Bar& b : bars) {
      auto lane = std::find_if(lanes.begin(), lanes.end(),
                               [&](const std::vector<Bar>& l) { return l.back().end <= b.start; });
      if (lane == lanes.end()) {
        lanes.push_back({b});
      } else {
        lane->push_back(b);
      }
    }
    out[lot] = std::move(lanes);
  }
  // Unassigned activities go last.
  if (auto it = out.find(-1); it != out.end()) {
    Lanes rest = std::move(it->second);
    out.erase(it);
    out[std::numeric_limits<int>::max()] = std::move(rest);
  }
  return out;
}

int chart_end(const std::map<int, Lanes>& rows) {
  int end = 0;
  for (const auto& [lot, lanes] : rows)
    for (const auto& lane : lanes) end = std::max(end, lane.back().end);
  return end;
}

std::string row_label(int lot) {
  return lot == std::numeric_limits<int>::max() ? std::string("other") : "lot " + std::to_string(lot);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

RunRecord make_record(const Instance& inst, const std::string& solver, const SolverConfig& cfg,
                      const SolveResult& result) {
  RunRecord r;
  r.instance = inst.name;
  r.solver = solver;
  r.problem_class = inst.problem_class;
  r.objective = cfg.objective;
  r.scenario = cfg.scenario.str();
  r.status = result.status;
  r.value = result.objective;
  r.bound = result.bound;
  r.runtime_s = result.stats.seconds;
  r.nodes = result.stats.nodes;
  r.seed = inst.seed;
  return r;
}

std::string records_csv_header() {
  return "instance,solver,class,objective,scenario,status,value,bound,runtime_s,nodes,seed";
}

std::string records_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << records_csv_header() << '\n';
  for (const auto& r : records) {
    out << r.instance << ',' << r.solver << ',' << to_string(r.problem_class) << ','
        << to_string(r.objective) << ',' << r.scenario << ',' << to_string(r.status) << ','
        << opt_str(r.value) << ',' << opt_str(r.bound) << ',' << fixed(r.runtime_s, 3) << ','
        << r.nodes << ',' << r.seed << '\n';
  }
  return out.str();
}

std::string records_json(const std::vector<RunRecord>& records) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["instance"] = r.instance;
    j["solver"] = r.solver;
    j["class"] = to_string(r.problem_class);
    j["objective"] = to_string(r.objective);
    j["scenario"] = r.scenario;
    j["status"] = to_string(r.status);
    j["value"] = r.value ? nlohmann::ordered_json(r.value->str()) : nullptr;
    j["bound"] = r.bound ? nlohmann::ordered_json(r.bound->str()) : nullptr;
    j["runtime_s"] = r.runtime_s;
    j["nodes"] = r.nodes;
    j["seed"] = r.seed;
    rows.push_back(std::move(j));
  }
  return rows.dump(1) + "\n";
}

std::string instance_group(const std::string& instance) {
  static const std::regex seed_suffix("_s[0-9]+$");
  return std::regex_replace(instance, seed_suffix, "");
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records) {
  using Key = std::tuple<std::string, std::string, Objective, std::string>;
  std::map<Key, std::vector<const RunRecord*>> groups;
  // Proven results per (instance, objective, scenario) and solver.
  using RunKey = std::tuple<std::string, Objective, std::string>;
  std::map<RunKey, std::map<std::string, const RunRecord*>> proofs;
  std::map<RunKey, std::set<std::string>> solvers_per_run;
  for (const auto& r : records) {
    groups[{instance_group(r.instance), r.solver, r.objective, r.scenario}].push_back(&r);
    solvers_per_run[{r.instance, r.objective, r.scenario}].insert(r.solver);
    if (proven(r.status)) proofs[{r.instance, r.objective, r.scenario}][r.solver] = &r;
  }
  std::vector<AggregateRow> rows;
  for (const auto& [key, runs] : groups) {
    AggregateRow row;
    std::tie(row.group, row.solver, row.objective, row.scenario) = key;
    row.instances = static_cast<int>(runs.size());
    double value_sum = 0, bound_sum = 0, time_sum = 0;
    int values = 0, bounds = 0;
    for (const RunRecord* r : runs) {
      if (r->value) value_sum += r->value->to_double(), ++values;
      if (r->bound) bound_sum += r->bound->to_double(), ++bounds;
      time_sum += r->runtime_s;
      if (r->status == SolveStatus::Optimal) ++row.optimal;
      if (r->status == SolveStatus::Feasible) ++row.feasible;
      const RunKey rk{r->instance, r->objective, r->scenario};
      if (solvers_per_run[rk].size() < 2) continue;
      if (!row.agreement) row.agreement = true;
      const auto& proved = proofs[rk];
      auto mine = proved.find(r->solver);
      if (mine == proved.end()) continue;
      for (const auto& [other, rec] : proved) {
        if (other == r->solver) continue;
        if (rec->status != mine->second->status || rec->value != mine->second->value) {
          row.agreement = false;
        }
      }
    }
    if (values) row.mean_value = value_sum / values;
    if (bounds) row.mean_bound = bound_sum / bounds;
    row.mean_runtime_s = runs.empty() ? 0.0 : time_sum / static_cast<double>(runs.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream out;
  out << "group,solver,objective,scenario,instances,mean_value,mean_bound,mean_runtime_s,opt,"
         "feasible,agreement\n";
  for (const auto& r : rows) {
    out << r.group << ',' << r.solver << ',' << to_string(r.objective) << ',' << r.scenario << ','
        << r.instances << ',' << (r.mean_value ? fixed(*r.mean_value, 3) : "") << ','
        << (r.mean_bound ? fixed(*r.mean_bound, 3) : "") << ',' << fixed(r.mean_runtime_s, 3)
        << ',' << r.optimal << ',' << r.feasible << ','
        << (r.agreement ? (*r.agreement ? "true" : "false") : "") << '\n';
  }
  return out.str();
}

std::string gantt_text(const Instance& inst, const Schedule& sched, int width) {
  const auto rows = pack(inst, sched);
  const int end = chart_end(rows);
  std::ostringstream out;
  if (rows.empty()) {
    out << "(no scheduled activities)\n";
    return out.str();
  }
  width = std::max(width, 1);
  const int scale = (end + width - 1) / width;  // time units per column
  out << "end " << end << ", 1 column = " << scale << " time unit" << (scale == 1 ? "" : "s")
      << "\n";
  out << std::left << std::setw(8) << "row" << std::setw(6) << "id" << std::right
      << std::setw(7) << "start" << std::setw(7) << "end"
      << "  |\n";
  for (const auto& [lot, lanes] : rows) {
    std::vector<Bar> bars;
    for (const auto& lane : lanes) bars.insert(bars.end(), lane.begin(), lane.end());
    std::sort(bars.begin(), bars.end(), [](const Bar& x, const Bar& y) {
      return std::tie(x.start, x.id) < std::tie(y.start, y.id);
    });
    for (const Bar& b : bars) {
      const int from = b.start / scale;
      const int to = std::max(from + 1, (b.end + scale - 1) / scale);
      out << std::left << std::setw(8) << row_label(lot) << std::setw(6) << b.id << std::right
          << std::setw(7) << b.start << std::setw(7) << b.end << "  |" << std::string(from, ' ')
          << std::string(to - from, '#') << '\n';
    }
  }
  return out.str();
}

std::string gantt_svg(const Instance& inst, const Schedule& sched) {
  const auto rows = pack(inst, sched);
  const int end = std::max(chart_end(rows), 1);
  const int label_w = 70, lane_h = 22, top = 30, unit = std::max(4, 800 / end);
  int lanes_total = 0;
  for (const auto& [lot, lanes] : rows) lanes_total += static_cast<int>(lanes.size());
  const int width = label_w + end * unit + 20;
  const int height = top + lanes_total * lane_h + 10;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"monospace\" font-size=\"11\">\n"
      << "<title>" << xml_escape(inst.name) << "</title>\n";
  // Time axis with about ten ticks.
  const int step = std::max(1, end / 10);
  for (int t = 0; t <= end; t += step) {
    const int x = label_w + t * unit;
    out << "<line x1=\"" << x << "\" y1=\"" << top - 8 << "\" x2=\"" << x << "\" y2=\""
        << height - 10 << "\" stroke=\"#ddd\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << top - 12 << "\" text-anchor=\"middle\">" << t
        << "</text>\n";
  }
  int y = top;
  for (const auto& [lot, lanes] : rows) {
    out << "<text x=\"4\" y=\"" << y + 15 << "\">" << row_label(lot) << "</text>\n";
    for (const auto& lane : lanes) {
      for (const Bar& b : lane) {
        const int x = label_w + b.start * unit;
        const int w = (b.end - b.start) * unit;
        out << "<rect x=\"" << x << "\" y=\"" << y + 2 << "\" width=\"" << w << "\" height=\""
            << lane_h - 4 << "\" fill=\"#8ab\" stroke=\"#345\"/>\n"
            << "<text x=\"" << x + w / 2 << "\" y=\"" << y + 15
            << "\" text-anchor=\"middle\">" << b.id << "</text>\n";
      }
      y += lane_h;
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace rcmpsp
