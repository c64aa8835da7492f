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
#ifndef RCMPSP_IO_HPP_
#define RCMPSP_IO_HPP_

#include <string>
#include <string_view>

#include "rcmpsp/instance.hpp"
#include "rcmpsp/schedule.hpp"

namespace rcmpsp {

inline constexpr std::string_view kInstanceFormat = "rcmpsp-instance/1";
inline constexpr std::string_view kScheduleFormat = "rcmpsp-schedule/1";

// JSON text. Parsing throws ModelError on a missing or wrong format tag
// and on malformed content.
std::string dump_instance(const Instance& inst);
Instance parse_instance(std::string_view text);

// FNV-1a of the compact instance text, as 16 hex digits.
std::string instance_fingerprint(const Instance& inst);

struct ScheduleFile {
  std::string instance_name;
  std::string fingerprint;
  Schedule schedule;
};

std::string dump_schedule(const Instance& inst, const Schedule& sched);
ScheduleFile parse_schedule(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

Instance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const Instance& inst);

}  // namespace rcmpsp

#endif  // RCMPSP_IO_HPP_
