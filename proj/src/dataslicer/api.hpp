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

// JSON request handlers shared by the HTTP server, the C API and the CLI, so
// every front end produces the same response bytes for the same request.

#include <set>
#include <string>

#include <json.hpp>

#include "dataslicer/dataset.hpp"
#include "dataslicer/graph.hpp"

namespace dataslicer::api {

using Json = nlohmann::json;

inline constexpr std::size_t kDefaultMaxResults = 3;

// {spec, M?} -> {minDistance, nodes: [{nodeId, displayIndex, distance}]}
Json match(const DataSliceGraph& graph, const Json& body);

// {spec, userPref?, M?, T?} -> {taskType, mode, thresholdMs, recommendations}
Json recommend(const DataSliceGraph& graph, const DatasetSchema* schema, const Json& body,
               const std::set<NodeId>& visited = {});

// {spec} -> {sql, columns, rows}
Json evaluate(const Dataset& dataset, const Json& body);
// {spec} -> {sql}
Json sql_template(const DatasetSchema& schema, const Json& body);

// Graph summary used by build and ingest responses.
Json graph_stats(const DataSliceGraph& graph);

// {code, message, detail}
Json error_body(const std::exception& e);

}  // namespace dataslicer::api
