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

#include "dataslicer/log_ingest.hpp"

#include <algorithm>
#include <map>

#include "dataslicer/codec.hpp"
#include "dataslicer/error.hpp"
#include "dataslicer/graph_io.hpp"

namespace dataslicer {

using codec::Json;

namespace {

[[noreturn]] void fail(const std::string& message, const std::string& where) {
  throw Error(ErrorCode::kFormatError, "session log: " + message + " at " + where, where);
}

const Json& member(const Json& doc, const char* key, const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end()) fail(std::string("missing '") + key + "'", where);
  return *it;
}

std::string string_member(const Json& doc, const char* key, const std::string& where) {
  const Json& v = member(doc, key, where);
  if (!v.is_string() || v.get_ref<const std::string&>().empty()) {
    fail(std::string("'") + key + "' must be a nonempty string", where + "/" + key);
  }
  return v.get<std::string>();
}

std::int64_t int_member(const Json& doc, const char* key, const std::string& where) {
  const Json& v = member(doc, key, where);
  if (!v.is_number_integer()) fail(std::string("'") + key + "' must be an integer", where + "/" + key);
  return v.get<std::int64_t>();
}

}  // namespace

LogEvent decode_log_event(const Json& doc, const std::string& where) {
  if (!doc.is_object()) fail("expected an object", where);
  LogEvent out;
  out.session_id = string_member(doc, "sessionId", where);
  out.role = parse_role(string_member(doc, "role", where), where + "/role");
  out.task_type = string_member(doc, "taskType", where);
  out.event.timestamp_ms = int_member(doc, "timestampMs", where);
  out.event.dwell_ms = int_member(doc, "dwellMs", where);
  if (out.event.dwell_ms < 0) fail("'dwellMs' must be nonnegative", where + "/dwellMs");
  out.event.spec = codec::decode_spec(member(doc, "spec", where), where + "/spec");
  out.event.visual = codec::decode_visual(member(doc, "visual", where), where + "/visual");
  return out;
}

Json encode_log_event(const LogEvent& e) {
  return Json{{"sessionId", e.session_id},
              {"role", std::string(role_name(e.role))},
              {"taskType", e.task_type},
              {"timestampMs", e.event.timestamp_ms},
              {"dwellMs", e.event.dwell_ms},
              {"spec", codec::encode_spec(e.event.spec)},
              {"visual", codec::encode_visual(e.event.visual)}};
}

LogEvent parse_log_line(std::string_view line, std::size_t line_no) {
  const std::string where = "line " + std::to_string(line_no);
  Json doc = Json::parse(line.begin(), line.end(), nullptr, false);
  if (doc.is_discarded()) fail("malformed JSON", where);
  try {
    return decode_log_event(doc, where);
  } catch (const Error& e) {
    // Nested decoders report JSON pointers; keep the line number in front.
    if (e.code() == ErrorCode::kFormatError && e.detail().rfind(where, 0) != 0) {
      throw Error(ErrorCode::kFormatError, "session log " + where + ": " + e.what(), where + e.detail());
    }
    throw;
  }
}

std::vector<SessionSequence> parse_session_log(const std::vector<std::string>& lines) {
  std::map<std::string, std::vector<std::pair<std::size_t, LogEvent>>> by_session;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    LogEvent e = parse_log_line(line, i + 1);
    auto& bucket = by_session[e.session_id];
    if (!bucket.empty()) {
      const LogEvent& first = bucket.front().second;
      if (first.role != e.role || first.task_type != e.task_type) {
        throw Error(ErrorCode::kInconsistentSession,
                    "session '" + e.session_id + "' changes role or task type at line " + std::to_string(i + 1),
                    e.session_id);
      }
    }
    bucket.emplace_back(i + 1, std::move(e));
  }

  std::vector<SessionSequence> out;
  out.reserve(by_session.size());
  for (auto& [id, bucket] : by_session) {
    std::stable_sort(bucket.begin(), bucket.end(), [](const auto& a, const auto& b) {
      return a.second.event.timestamp_ms < b.second.event.timestamp_ms;
    });
    SessionSequence seq{id, bucket.front().second.role, bucket.front().second.task_type, {}};
    seq.events.reserve(bucket.size());
    for (auto& [line_no, e] : bucket) seq.events.push_back(std::move(e.event));
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<SessionSequence> parse_session_log(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parse_session_log(lines);
}

std::string serialize_session_log(const std::vector<SessionSequence>& sequences) {
  std::string out;
  for (const auto& seq : sequences) {
    for (const auto& e : seq.events) {
      out += encode_log_event(LogEvent{seq.session_id, seq.role, seq.task_type, e}).dump();
      out += '\n';
    }
  }
  return out;
}

std::vector<bool> mark_interesting(const SessionSequence& seq, double threshold_ms) {
  std::vector<bool> flags;
  flags.reserve(seq.events.size());
  for (const auto& e : seq.events) flags.push_back(static_cast<double>(e.dwell_ms) >= threshold_ms);
  return flags;
}

}  // namespace dataslicer
