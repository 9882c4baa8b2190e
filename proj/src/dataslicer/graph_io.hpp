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

// On-disk graph document: pretty-printed JSON with nodes in displayIndex order
// and edges sorted by (from, to). Saving is deterministic, so equal graphs give
// byte-identical files.

#include <string>

#include <json.hpp>

#include "dataslicer/graph.hpp"

namespace dataslicer {

inline constexpr int kGraphFormatVersion = 1;

// "expert" / "regular"; throws kFormatError.
Role parse_role(const std::string& text, const std::string& where);

nlohmann::json encode_graph(const DataSliceGraph& graph);
// Full consistency check: hashes, displayIndex, dangling edges, edge ops.
DataSliceGraph decode_graph(const nlohmann::json& doc);

std::string serialize_graph(const DataSliceGraph& graph);
DataSliceGraph parse_graph(const std::string& text);

void save_graph(const DataSliceGraph& graph, const std::string& path);
DataSliceGraph load_graph(const std::string& path);

}  // namespace dataslicer
