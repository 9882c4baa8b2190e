/*
 * Copyright 2026 The DataSlicer Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

// Session log: UTF-8, one JSON document per line:
//   {"sessionId", "role": "expert"|"regular", "taskType", "timestampMs",
//    "dwellMs", "spec": <spec document>, "visual": <visual document>}

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dataslicer/graph.hpp"

namespace dataslicer {

struct LogEvent {
  std::string session_id;
  Role role = Role::kRegular;
  std::string task_type;
  SessionEvent event;
};

// Throws kFormatError naming the line (1-based); `line_no` only labels errors.
LogEvent parse_log_line(std::string_view line, std::size_t line_no);
LogEvent decode_log_event(const nlohmann::json& doc, const std::string& where);
nlohmann::json encode_log_event(const LogEvent& event);

/// Groups events by sessionId (sequences sorted by id), each ordered by
/// timestamp with ties kept in input order. Blank lines are skipped.
/// Throws kFormatError, or kInconsistentSession when role or taskType varies
/// within a session.
std::vector<SessionSequence> parse_session_log(std::string_view text);
std::vector<SessionSequence> parse_session_log(const std::vector<std::string>& lines);

// One line per event, sequences in order, each line newline-terminated.
std::string serialize_session_log(const std::vector<SessionSequence>& sequences);

// dwell >= threshold, per event.
std::vector<bool> mark_interesting(const SessionSequence& seq, double threshold_ms = 3000.0);

}  // namespace dataslicer
