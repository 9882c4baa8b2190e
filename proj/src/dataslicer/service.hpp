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

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dataslicer/dataset.hpp"
#include "dataslicer/graph.hpp"
#include "dataslicer/matcher.hpp"
#include "dataslicer/ranker.hpp"

namespace dataslicer {

/// Node spec with x, y, layers and grouping taken verbatim. Each filter
/// descriptor takes the current spec's concrete predicates on that field, or
/// becomes an unbound placeholder when there are none.
DataSpecification contextualize(const AbstractSpec& node_spec, const DataSpecification& current);

/// User preference when its encodings cover the node's selected fields
/// (returned with encodings narrowed to those fields), else the first stored
/// visual spec, else the default rule table. `schema` resolves coordinate and
/// temporal columns; without it names are used.
VisualSpec choose_visual_spec(const SliceNode& node, const std::optional<VisualSpec>& user_pref,
                              const DatasetSchema* schema = nullptr);

// Rule table only.
VisualSpec default_visual_spec(const AbstractSpec& spec, const DatasetSchema* schema = nullptr);

struct RecommendOptions {
  std::size_t max_results = 3;
  std::optional<double> threshold_ms;  // graph's threshold when unset
  std::optional<VisualSpec> user_pref;
  std::set<NodeId> visited;  // nodes the caller's session already showed
};

struct Recommendation {
  RankedRecommendation ranked;
  DataSpecification concrete_spec;
  VisualSpec visual;
  std::optional<std::string> sql_template;  // needs a schema
  bool visited = false;
};

// match, rank, then contextualize each node. Never mutates the graph.
std::vector<Recommendation> recommend(const DataSliceGraph& graph, const DatasetSchema* schema,
                                      const DataSpecification& current, const RecommendOptions& options);

nlohmann::json encode_match_result(const MatchResult& result);
nlohmann::json encode_recommendations(const DataSliceGraph& graph, const std::vector<Recommendation>& recs,
                                      double threshold_ms);

}  // namespace dataslicer
