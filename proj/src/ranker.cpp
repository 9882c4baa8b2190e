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

#include "dataslicer/ranker.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "dataslicer/error.hpp"

namespace dataslicer {

double edge_weight(const SliceEdge& edge) {
  if (edge.expert_count >= 1) return 1.0;
  if (edge.user_count < 1) throw Error(ErrorCode::kInvalidArgument, "edge with no traversals");
  return 1.0 + 1.0 / static_cast<double>(edge.user_count);
}

std::map<NodeId, std::optional<double>> shortest_paths(const DataSliceGraph& graph,
                                                       const std::vector<NodeId>& sources) {
  const auto& order = graph.ordered_ids();
  const std::size_t n = order.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& [key, edge] : graph.edges()) {
    adj[graph.node(edge.from).display_index].emplace_back(graph.node(edge.to).display_index, edge_weight(edge));
  }

  std::vector<std::optional<double>> dist(n);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (const auto& s : sources) {
    std::size_t i = graph.node(s).display_index;
    dist[i] = 0.0;
    queue.emplace(0.0, i);
  }
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > *dist[u]) continue;
    for (auto [v, w] : adj[u]) {
      double nd = d + w;
      if (!dist[v] || nd < *dist[v]) {
        dist[v] = nd;
        queue.emplace(nd, v);
      }
    }
  }

  std::map<NodeId, std::optional<double>> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_hint(out.end(), order[i], dist[i]);
  return out;
}

std::map<NodeId, std::optional<double>> shortest_paths(const DataSliceGraph& graph, const NodeId& source) {
  return shortest_paths(graph, std::vector<NodeId>{source});
}

std::vector<RankedRecommendation> rank_data_slices(const DataSliceGraph& graph, const std::vector<NodeId>& matched,
                                                   std::size_t max_results, double threshold_ms) {
  if (matched.empty()) throw Error(ErrorCode::kInvalidArgument, "no matched nodes to rank from");
  auto dist = shortest_paths(graph, matched);
  if (max_results == 0) return {};

  std::vector<RankedRecommendation> all;
  all.reserve(graph.nodes().size());
  for (const auto& id : graph.ordered_ids()) {
    const SliceNode& node = graph.node(id);
    all.push_back({id, node.display_index, dist.at(id), node.effective_interestingness(threshold_ms), false});
  }

  std::vector<RankedRecommendation> ranked;
  for (const auto& r : all) {
    if (r.path_distance && r.effective_interestingness > threshold_ms) ranked.push_back(r);
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedRecommendation& a, const RankedRecommendation& b) {
    if (*a.path_distance != *b.path_distance) return *a.path_distance < *b.path_distance;
    if (a.effective_interestingness != b.effective_interestingness) {
      return a.effective_interestingness > b.effective_interestingness;
    }
    return a.display_index < b.display_index;
  });
  if (ranked.size() >= max_results) {
    ranked.resize(max_results);
    return ranked;
  }

  std::set<std::size_t> listed;
  for (const auto& r : ranked) listed.insert(r.display_index);
  std::vector<RankedRecommendation> fill;
  for (const auto& r : all) {
    if (!listed.count(r.display_index)) fill.push_back(r);
  }
  std::sort(fill.begin(), fill.end(), [](const RankedRecommendation& a, const RankedRecommendation& b) {
    if (a.effective_interestingness != b.effective_interestingness) {
      return a.effective_interestingness > b.effective_interestingness;
    }
    return a.display_index < b.display_index;
  });
  for (auto& r : fill) {
    if (ranked.size() == max_results) break;
    r.via_fill = true;
    ranked.push_back(std::move(r));
  }
  return ranked;
}

}  // namespace dataslicer
