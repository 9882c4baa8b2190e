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

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dataslicer/dataset.hpp"
#include "dataslicer/graph.hpp"
#include "dataslicer/log_ingest.hpp"

namespace dataslicer {

/// Service state: datasets, one graph per task type and the recorded UI
/// sessions. Readers take immutable snapshots; mutations run one at a time
/// and publish a new snapshot.
class Engine {
 public:
  using Json = nlohmann::json;

  // New graphs are saved as `<graph_dir>/<task>.graph.json` when set.
  explicit Engine(std::string graph_dir = {});

  // `path` is where the graph is saved after each mutation; empty to skip.
  void put_graph(DataSliceGraph graph, std::string path = {});
  void put_dataset(Dataset dataset);

  std::shared_ptr<const DataSliceGraph> graph(const std::string& task) const;  // kUnknownGraph
  std::shared_ptr<const Dataset> dataset(const std::string& name) const;       // kUnknownDataset

  Json add_dataset(std::string_view csv, const Json& schema_doc, const std::string& name = {});
  // Session-log text; every session must be for `task` (kTaskMismatch) and new
  // to the graph. Creates the graph on first use.
  Json ingest(const std::string& task, std::string_view log_text);
  Json graph_document(const std::string& task) const;
  Json match(const std::string& task, const Json& body) const;
  // Body may also carry "dataset" (defaults to the graph's, or the only one
  // loaded) and "sessionId"
  // (flags recommendations that session already showed).
  Json recommend(const std::string& task, const Json& body) const;
  Json evaluate(const std::string& dataset, const Json& body) const;
  Json upvote(const std::string& task, const std::string& node_id);
  Json record_event(const Json& body);
  std::string session_log(const std::string& session_id) const;  // kUnknownSession

 private:
  void publish(const std::string& task, std::shared_ptr<const DataSliceGraph> graph);

  std::string graph_dir_;
  mutable std::mutex state_mutex_;  // guards the maps below
  std::mutex writer_mutex_;         // serializes mutations
  std::map<std::string, std::shared_ptr<const DataSliceGraph>> graphs_;
  std::map<std::string, std::string> graph_paths_;
  std::map<std::string, std::shared_ptr<const Dataset>> datasets_;
  std::map<std::string, std::vector<LogEvent>> sessions_;
};

}  // namespace dataslicer
