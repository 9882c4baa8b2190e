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

#include "dataslicer/engine.hpp"

#include <algorithm>
#include <cctype>

#include "dataslicer/api.hpp"
#include "dataslicer/error.hpp"
#include "dataslicer/graph_io.hpp"
#include "dataslicer/ranker.hpp"

namespace dataslicer {

namespace {

// Task types name graph files, so keep them to a safe character set.
void check_task_name(const std::string& task) {
  bool ok = !task.empty() && task.size() <= 128 && task.front() != '.' &&
            std::all_of(task.begin(), task.end(), [](unsigned char c) {
              return std::isalnum(c) || c == '-' || c == '_' || c == '.';
            });
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "invalid task type '" + task + "'", task);
}

}  // namespace

Engine::Engine(std::string graph_dir) : graph_dir_(std::move(graph_dir)) {}

void Engine::put_graph(DataSliceGraph graph, std::string path) {
  std::lock_guard lock(state_mutex_);
  std::string task = graph.task_type();
  graphs_[task] = std::make_shared<const DataSliceGraph>(std::move(graph));
  if (!path.empty()) graph_paths_[task] = std::move(path);
}

void Engine::put_dataset(Dataset dataset) {
  std::lock_guard lock(state_mutex_);
  std::string name = dataset.schema().name;
  datasets_[name] = std::make_shared<const Dataset>(std::move(dataset));
}

std::shared_ptr<const DataSliceGraph> Engine::graph(const std::string& task) const {
  std::lock_guard lock(state_mutex_);
  auto it = graphs_.find(task);
  if (it == graphs_.end()) throw Error(ErrorCode::kUnknownGraph, "no graph for task '" + task + "'", task);
  return it->second;
}

std::shared_ptr<const Dataset> Engine::dataset(const std::string& name) const {
  std::lock_guard lock(state_mutex_);
  auto it = datasets_.find(name);
  if (it == datasets_.end()) throw Error(ErrorCode::kUnknownDataset, "no dataset '" + name + "'", name);
  return it->second;
}

void Engine::publish(const std::string& task, std::shared_ptr<const DataSliceGraph> graph) {
  std::string path;
  {
    std::lock_guard lock(state_mutex_);
    auto it = graph_paths_.find(task);
    if (it != graph_paths_.end()) {
      path = it->second;
    } else if (!graph_dir_.empty()) {
      path = graph_paths_[task] = graph_dir_ + "/" + task + ".graph.json";
    }
  }
  // Persist first so a failed write leaves the served graph unchanged.
  if (!path.empty()) save_graph(*graph, path);
  std::lock_guard lock(state_mutex_);
  graphs_[task] = std::move(graph);
}

Engine::Json Engine::add_dataset(std::string_view csv, const Json& schema_doc, const std::string& name) {
  DatasetSchema schema = decode_schema(schema_doc);
  if (!name.empty()) schema.name = name;
  Dataset data = load_dataset(csv, std::move(schema));
  Json out{{"name", data.schema().name}, {"rows", data.row_count()}, {"columns", data.schema().columns.size()}};
  put_dataset(std::move(data));
  return out;
}

Engine::Json Engine::ingest(const std::string& task, std::string_view log_text) {
  check_task_name(task);
  auto sequences = parse_session_log(log_text);
  for (const auto& seq : sequences) {
    if (seq.task_type != task) {
      throw Error(ErrorCode::kTaskMismatch,
                  "session '" + seq.session_id + "' is for task '" + seq.task_type + "', not '" + task + "'",
                  seq.task_type);
    }
  }
  std::lock_guard writer(writer_mutex_);
  std::shared_ptr<const DataSliceGraph> current;
  {
    std::lock_guard lock(state_mutex_);
    auto it = graphs_.find(task);
    if (it != graphs_.end()) current = it->second;
  }
  DataSliceGraph next = current ? *current : DataSliceGraph(task);
  const std::size_t nodes_before = next.nodes().size();
  const std::size_t edges_before = next.edges().size();
  std::size_t events = 0;
  std::size_t normalized_events = 0;
  for (const auto& seq : sequences) {
    const auto& known = next.meta().sessions;
    if (std::any_of(known.begin(), known.end(), [&](const SessionRecord& r) { return r.session_id == seq.session_id; })) {
      throw Error(ErrorCode::kInvalidArgument, "session '" + seq.session_id + "' was already merged", seq.session_id);
    }
    SessionSequence normalized = normalize_sequence(seq);
    events += seq.events.size();
    normalized_events += normalized.events.size();
    next.merge(normalized);
  }
  Json out = api::graph_stats(next);
  out["mergedSessions"] = sequences.size();
  out["events"] = events;
  out["normalizedEvents"] = normalized_events;
  out["addedNodes"] = next.nodes().size() - nodes_before;
  out["addedEdges"] = next.edges().size() - edges_before;
  publish(task, std::make_shared<const DataSliceGraph>(std::move(next)));
  return out;
}

Engine::Json Engine::graph_document(const std::string& task) const { return encode_graph(*graph(task)); }

Engine::Json Engine::match(const std::string& task, const Json& body) const { return api::match(*graph(task), body); }

Engine::Json Engine::recommend(const std::string& task, const Json& body) const {
  auto g = graph(task);
  std::shared_ptr<const Dataset> data;
  if (body.is_object()) {
    if (auto it = body.find("dataset"); it != body.end() && !it->is_null()) {
      if (!it->is_string()) throw Error(ErrorCode::kFormatError, "request: 'dataset' must be a string", "/dataset");
      data = dataset(it->get<std::string>());
    }
  }
  if (!data) {
    std::lock_guard lock(state_mutex_);
    auto it = datasets_.find(g->meta().dataset);
    if (it != datasets_.end()) {
      data = it->second;
    } else if (datasets_.size() == 1) {
      data = datasets_.begin()->second;
    }
  }
  std::set<NodeId> visited;
  if (body.is_object()) {
    if (auto it = body.find("sessionId"); it != body.end() && it->is_string()) {
      std::lock_guard lock(state_mutex_);
      auto s = sessions_.find(it->get<std::string>());
      if (s != sessions_.end()) {
        for (const auto& e : s->second) {
          NodeId id = NodeId::for_spec(canonicalize(e.event.spec));
          if (g->find(id)) visited.insert(std::move(id));
        }
      }
    }
  }
  return api::recommend(*g, data ? &data->schema() : nullptr, body, visited);
}

Engine::Json Engine::evaluate(const std::string& name, const Json& body) const {
  return api::evaluate(*dataset(name), body);
}

Engine::Json Engine::upvote(const std::string& task, const std::string& node_id) {
  std::lock_guard writer(writer_mutex_);
  auto next = std::make_shared<DataSliceGraph>(dataslicer::upvote(*graph(task), NodeId{node_id}));
  const SliceNode& node = next->node(NodeId{node_id});
  Json out{{"nodeId", node.id.value},
           {"displayIndex", node.display_index},
           {"votes", node.votes},
           {"effectiveInterestingness", node.effective_interestingness(next->meta().threshold_ms)}};
  publish(task, std::move(next));
  return out;
}

Engine::Json Engine::record_event(const Json& body) {
  LogEvent e = decode_log_event(body, "");
  std::lock_guard writer(writer_mutex_);
  std::lock_guard lock(state_mutex_);
  auto& events = sessions_[e.session_id];
  if (!events.empty() && (events.front().role != e.role || events.front().task_type != e.task_type)) {
    throw Error(ErrorCode::kInconsistentSession, "session '" + e.session_id + "' changes role or task type",
                e.session_id);
  }
  events.push_back(std::move(e));
  return Json{{"sessionId", events.back().session_id}, {"events", events.size()}};
}

std::string Engine::session_log(const std::string& session_id) const {
  std::lock_guard lock(state_mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::kUnknownSession, "no recorded session '" + session_id + "'", session_id);
  }
  std::string out;
  for (const auto& e : it->second) out += encode_log_event(e).dump() + "\n";
  return out;
}

}  // namespace dataslicer
