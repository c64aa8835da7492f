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

#include "rcmpsp/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rcmpsp {
namespace {

using Json = nlohmann::ordered_json;

Json instance_json(const Instance& inst) {
  Json meta = {{"name", inst.name},
               {"class", to_string(inst.problem_class)},
               {"pattern", to_string(inst.pattern)},
               {"resource_strength", inst.resource_strength.str()},
               {"seed", inst.seed},
               {"horizon", inst.horizon},
               {"source", inst.network.source_id()},
               {"sink", inst.network.sink_id()}};
  Json resources = Json::array();
  for (const auto& r : inst.resources) {
    resources.push_back({{"id", r.id},
                         {"capacity", r.capacity},
                         {"balanced", r.balanced},
                         {"renewable", r.renewable}});
  }
  Json activities = Json::array();
  for (const auto& a : inst.network.activities()) {
    Json demands = Json::array();
    for (const auto& [r, q] : a.demands) demands.push_back({r, q});
    Json j = {{"id", a.id}, {"kind", to_string(a.kind)}, {"a", a.min_duration},
              {"b", a.max_duration}, {"demands", demands}};
    j["due"] = a.due_date ? Json(*a.due_date) : Json(nullptr);
    j["lot"] = a.lot ? Json(*a.lot) : Json(nullptr);
    activities.push_back(std::move(j));
  }
  Json relations = Json::array();
  for (const auto& [from, bundles] : inst.network.relations()) {
    relations.push_back({{"from", from}, {"bundles", bundles}});
  }
  return {{"format", kInstanceFormat},
          {"meta", meta},
          {"resources", resources},
          {"activities", activities},
          {"relations", relations}};
}

Json parse_json(std::string_view text, std::string_view format) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    throw ModelError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("format") || j["format"] != format) {
    throw ModelError("expected format tag " + std::string(format));
  }
  return j;
}

}  // namespace

std::string dump_instance(const Instance& inst) { return instance_json(inst).dump(1) + "\n"; }

Instance parse_instance(std::string_view text) {
  const Json j = parse_json(text, kInstanceFormat);
  try {
    Instance inst;
    const auto& meta = j.at("meta");
    inst.name = meta.at("name").get<std::string>();
    inst.problem_class = parse_problem_class(meta.at("class").get<std::string>());
    inst.pattern = parse_pattern(meta.at("pattern").get<std::string>());
    inst.resource_strength = Rational::parse(meta.at("resource_strength").get<std::string>());
    inst.seed = meta.at("seed").get<std::uint64_t>();
    inst.horizon = meta.at("horizon").get<int>();
    for (const auto& r : j.at("resources")) {
      inst.resources.push_back({r.at("id").get<int>(), r.at("capacity").get<int>(),
                                r.at("balanced").get<bool>(), r.at("renewable").get<bool>()});
    }
    std::vector<Activity> acts;
    for (const auto& x : j.at("activities")) {
      Activity a;
      a.id = x.at("id").get<int>();
      a.kind = parse_activity_kind(x.at("kind").get<std::string>());
      a.min_duration = x.at("a").get<int>();
      a.max_duration = x.at("b").get<int>();
      for (const auto& d : x.at("demands")) a.demands[d.at(0).get<int>()] = d.at(1).get<int>();
      if (x.contains("due") && !x["due"].is_null()) a.due_date = x["due"].get<int>();
      if (x.contains("lot") && !x["lot"].is_null()) a.lot = x["lot"].get<int>();
      acts.push_back(std::move(a));
    }
    std::map<int, std::vector<Bundle>> rel;
    for (const auto& r : j.at("relations")) {
      rel[r.at("from").get<int>()] = r.at("bundles").get<std::vector<Bundle>>();
    }
    inst.network = Network(std::move(acts), std::move(rel), meta.at("source").get<int>(),
                           meta.at("sink").get<int>());
    return inst;
  } catch (const Json::exception& e) {
    throw ModelError(std::string("bad instance content: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ModelError(std::string("bad instance content: ") + e.what());
  }
}

std::string instance_fingerprint(const Instance& inst) {
  const std::string text = instance_json(inst).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string dump_schedule(const Instance& inst, const Schedule& sched) {
  Json acts = Json::array();
  for (const auto& e : sched.entries) {
    acts.push_back({{"id", e.id}, {"present", e.present}, {"start", e.start}, {"end", e.end}});
  }
  Json j = {{"format", kScheduleFormat},
            {"instance", inst.name},
            {"fingerprint", instance_fingerprint(inst)},
            {"activities", acts}};
  return j.dump(1) + "\n";
}

ScheduleFile parse_schedule(std::string_view text) {
  const Json j = parse_json(text, kScheduleFormat);
  try {
    ScheduleFile out;
    out.instance_name = j.at("instance").get<std::string>();
    out.fingerprint = j.at("fingerprint").get<std::string>();
    for (const auto& x : j.at("activities")) {
      out.schedule.entries.push_back({x.at("id").get<int>(), x.at("present").get<bool>(),
                                      x.at("start").get<int>(), x.at("end").get<int>()});
    }
    std::sort(out.schedule.entries.begin(), out.schedule.entries.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
  } catch (const Json::exception& e) {
    throw ModelError(std::string("bad schedule content: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

Instance read_instance_file(const std::string& path) { return parse_instance(read_text_file(path)); }

void write_instance_file(const std::string& path, const Instance& inst) {
  write_text_file(path, dump_instance(inst));
}

}  // namespace rcmpsp
