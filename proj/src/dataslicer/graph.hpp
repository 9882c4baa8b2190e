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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dataslicer/nav_op.hpp"
#include "dataslicer/spec.hpp"

namespace dataslicer {

/// Content address of an AbstractSpec: hex SHA-256 of its canonical rendering.
struct NodeId {
  std::string value;

  static NodeId for_spec(const AbstractSpec& spec);

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

enum class Role { kExpert, kRegular };
std::string_view role_name(Role role);

struct SessionEvent {
  DataSpecification spec;
  VisualSpec visual;
  std::int64_t dwell_ms = 0;
  std::int64_t timestamp_ms = 0;

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

struct SessionSequence {
  std::string session_id;
  Role role = Role::kRegular;
  std::string task_type;
  std::vector<SessionEvent> events;

  // At least one event, nondecreasing timestamps, nonnegative dwell.
  void validate() const;
};

struct SliceNode {
  NodeId id;
  std::size_t display_index = 0;
  AbstractSpec spec;
  std::int64_t interestingness_ms = 0;  // max dwell observed
  std::int64_t votes = 0;
  std::set<VisualSpec> visual_specs;

  // Upvotes count as one threshold's worth of dwell each.
  double effective_interestingness(double threshold_ms) const {
    return static_cast<double>(interestingness_ms) + static_cast<double>(votes) * threshold_ms;
  }

  friend bool operator==(const SliceNode&, const SliceNode&) = default;
};

struct SliceEdge {
  NodeId from;
  NodeId to;
  std::int64_t expert_count = 0;
  std::int64_t user_count = 0;
  NavOp nav_op;

  friend bool operator==(const SliceEdge&, const SliceEdge&) = default;
};

struct SessionRecord {
  std::string session_id;
  Role role;

  friend auto operator<=>(const SessionRecord&, const SessionRecord&) = default;
};

struct GraphMeta {
  std::string dataset;
  double threshold_ms = 3000.0;
  std::vector<SessionRecord> sessions;  // sorted; one entry per merged sequence

  friend bool operator==(const GraphMeta&, const GraphMeta&) = default;
};

using EdgeKey = std::pair<NodeId, NodeId>;

/// Data-slice graph for one task type. Nodes are keyed by content address and
/// displayIndex is the node's rank in that order.
class DataSliceGraph {
 public:
  explicit DataSliceGraph(std::string task_type, GraphMeta meta = {});

  const std::string& task_type() const noexcept { return task_type_; }
  const GraphMeta& meta() const noexcept { return meta_; }
  void set_meta(GraphMeta meta);

  const std::map<NodeId, SliceNode>& nodes() const noexcept { return nodes_; }
  const std::map<EdgeKey, SliceEdge>& edges() const noexcept { return edges_; }

  const SliceNode* find(const NodeId& id) const;
  const SliceNode& node(const NodeId& id) const;  // throws kUnknownNode
  const SliceNode* find_spec(const AbstractSpec& spec) const;
  // Node ids in displayIndex order.
  const std::vector<NodeId>& ordered_ids() const noexcept { return order_; }

  // "prediction" when any expert sequence contributed, else "recommendation".
  std::string_view mode() const;

  // In-place mutators behind merge_sequence / upvote.
  void merge(const SessionSequence& normalized);
  void add_vote(const NodeId& id);

  // Loader hooks; the caller validates consistency.
  void insert_node(SliceNode node);
  void insert_edge(SliceEdge edge);

  friend bool operator==(const DataSliceGraph&, const DataSliceGraph&);

 private:
  void reindex();

  std::string task_type_;
  GraphMeta meta_;
  std::map<NodeId, SliceNode> nodes_;
  std::map<EdgeKey, SliceEdge> edges_;
  std::vector<NodeId> order_;
};

/// Rewrites a sequence so consecutive events differ by exactly one NavOp.
///
/// Consecutive events with equal canonical specs collapse into the first,
/// summing dwell. A multi-op transition is routed through a spec visited
/// elsewhere in the same sequence when one lies on a shortest op path;
/// otherwise intermediates follow diff_ops order. Inserted events carry zero
/// dwell plus the preceding event's visual spec and timestamp.
SessionSequence normalize_sequence(const SessionSequence& seq);

// Throws kTaskMismatch, or kInvalidArgument when `seq` is not normalized.
DataSliceGraph merge_sequence(DataSliceGraph graph, const SessionSequence& seq);

// Normalizes and merges every sequence. Throws kTaskMismatch.
DataSliceGraph build_graph(const std::vector<SessionSequence>& sequences, const std::string& task_type,
                           GraphMeta meta = {});

// Throws kUnknownNode.
DataSliceGraph upvote(DataSliceGraph graph, const NodeId& id);

}  // namespace dataslicer
