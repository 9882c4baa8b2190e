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
#include <map>
#include <optional>
#include <vector>

#include "dataslicer/graph.hpp"

namespace dataslicer {

inline constexpr double kDefaultThresholdMs = 3000.0;

// 1 for edges any expert traversed, else 1 + 1/userCount.
double edge_weight(const SliceEdge& edge);

// Distances from the nearest of `sources` over directed edges; nullopt marks
// unreachable nodes. Throws kUnknownNode.
std::map<NodeId, std::optional<double>> shortest_paths(const DataSliceGraph& graph, const std::vector<NodeId>& sources);
std::map<NodeId, std::optional<double>> shortest_paths(const DataSliceGraph& graph, const NodeId& source);

struct RankedRecommendation {
  NodeId id;
  std::size_t display_index = 0;
  std::optional<double> path_distance;
  double effective_interestingness = 0;
  bool via_fill = false;

  friend bool operator==(const RankedRecommendation&, const RankedRecommendation&) = default;
};

/// Nodes with effective interestingness above `threshold_ms`, nearest to any
/// matched node first (ties: more interesting, then smaller displayIndex).
/// When fewer than `max_results` are reachable the list is topped up with the
/// most interesting remaining nodes, flagged via_fill.
/// Throws kUnknownNode, kInvalidArgument for an empty match set.
std::vector<RankedRecommendation> rank_data_slices(const DataSliceGraph& graph, const std::vector<NodeId>& matched,
                                                   std::size_t max_results, double threshold_ms = kDefaultThresholdMs);

}  // namespace dataslicer
