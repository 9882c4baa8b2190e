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
#include <functional>
#include <vector>

#include "dataslicer/graph.hpp"

namespace dataslicer {

// Size of the symmetric difference of two field sets.
std::size_t field_set_distance(const std::vector<FieldExpr>& a, const std::vector<FieldExpr>& b);

// Selected fields (x, y and layers pooled) plus filter descriptors plus
// grouping, each as a symmetric difference. Axis assignment is ignored.
std::size_t slice_distance(const AbstractSpec& a, const AbstractSpec& b);

using SliceDistanceFn = std::function<std::size_t(const AbstractSpec&, const AbstractSpec&)>;

struct MatchedNode {
  NodeId id;
  std::size_t display_index = 0;
  std::size_t distance = 0;

  friend bool operator==(const MatchedNode&, const MatchedNode&) = default;
};

struct MatchResult {
  std::vector<MatchedNode> nodes;  // displayIndex order
  std::size_t min_distance = 0;

  std::vector<NodeId> ids() const;
  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

// Every node at the minimum distance from `query`, at most `max_results`
// (smallest displayIndex first). Throws kEmptyGraph, kInvalidArgument for
// max_results == 0.
MatchResult match_data_slices(const DataSliceGraph& graph, const AbstractSpec& query, std::size_t max_results = 3);
MatchResult match_data_slices(const DataSliceGraph& graph, const AbstractSpec& query, std::size_t max_results,
                              const SliceDistanceFn& distance);

}  // namespace dataslicer
