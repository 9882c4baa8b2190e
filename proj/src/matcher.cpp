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

#include "dataslicer/matcher.hpp"

#include <algorithm>
#include <set>

#include "dataslicer/error.hpp"

namespace dataslicer {

namespace {

std::vector<FieldExpr> sorted_unique(std::vector<FieldExpr> fields) {
  std::sort(fields.begin(), fields.end());
  fields.erase(std::unique(fields.begin(), fields.end()), fields.end());
  return fields;
}

std::vector<FieldExpr> selected(const AbstractSpec& s) {
  std::vector<FieldExpr> out = s.layers;
  if (s.x) out.push_back(*s.x);
  if (s.y) out.push_back(*s.y);
  return out;
}

}  // namespace

std::size_t field_set_distance(const std::vector<FieldExpr>& a, const std::vector<FieldExpr>& b) {
  auto sa = sorted_unique(a);
  auto sb = sorted_unique(b);
  std::vector<FieldExpr> diff;
  std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(diff));
  return diff.size();
}

std::size_t slice_distance(const AbstractSpec& a, const AbstractSpec& b) {
  return field_set_distance(selected(a), selected(b)) +
         field_set_distance(a.filter_descriptors, b.filter_descriptors) + field_set_distance(a.grouping, b.grouping);
}

std::vector<NodeId> MatchResult::ids() const {
  std::vector<NodeId> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) out.push_back(n.id);
  return out;
}

MatchResult match_data_slices(const DataSliceGraph& graph, const AbstractSpec& query, std::size_t max_results) {
  return match_data_slices(graph, query, max_results, [](const AbstractSpec& a, const AbstractSpec& b) {
    return slice_distance(a, b);
  });
}

MatchResult match_data_slices(const DataSliceGraph& graph, const AbstractSpec& query, std::size_t max_results,
                              const SliceDistanceFn& distance) {
  if (graph.nodes().empty()) throw Error(ErrorCode::kEmptyGraph, "graph '" + graph.task_type() + "' has no nodes");
  if (max_results == 0) throw Error(ErrorCode::kInvalidArgument, "max results must be positive");
  MatchResult result;
  // ordered_ids() is displayIndex order, so ties keep that order.
  for (const auto& id : graph.ordered_ids()) {
    const SliceNode& node = graph.node(id);
    std::size_t d = distance(query, node.spec);
    if (result.nodes.empty() || d < result.min_distance) {
      result.nodes.clear();
      result.min_distance = d;
    } else if (d > result.min_distance) {
      continue;
    }
    if (result.nodes.size() < max_results) result.nodes.push_back({id, node.display_index, d});
  }
  return result;
}

}  // namespace dataslicer
