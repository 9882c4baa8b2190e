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

#include "dataslicer/graph.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>

#include "dataslicer/error.hpp"

namespace dataslicer {

NodeId NodeId::for_spec(const AbstractSpec& spec) {
  const std::string text = spec.canonical_rendering();
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kInternal, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return NodeId{std::move(hex)};
}

std::string_view role_name(Role role) { return role == Role::kExpert ? "expert" : "regular"; }

void SessionSequence::validate() const {
  if (events.empty()) throw Error(ErrorCode::kInvalidArgument, "session '" + session_id + "' has no events");
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].dwell_ms < 0) {
      throw Error(ErrorCode::kInvalidArgument, "session '" + session_id + "': negative dwell at event " +
                                                   std::to_string(i));
    }
    if (i > 0 && events[i].timestamp_ms < events[i - 1].timestamp_ms) {
      throw Error(ErrorCode::kInvalidArgument,
                  "session '" + session_id + "': timestamps decrease at event " + std::to_string(i));
    }
  }
}

DataSliceGraph::DataSliceGraph(std::string task_type, GraphMeta meta)
    : task_type_(std::move(task_type)), meta_(std::move(meta)) {
  std::sort(meta_.sessions.begin(), meta_.sessions.end());
}

void DataSliceGraph::set_meta(GraphMeta meta) {
  meta_ = std::move(meta);
  std::sort(meta_.sessions.begin(), meta_.sessions.end());
}

const SliceNode* DataSliceGraph::find(const NodeId& id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const SliceNode& DataSliceGraph::node(const NodeId& id) const {
  const SliceNode* n = find(id);
  if (!n) throw Error(ErrorCode::kUnknownNode, "unknown node '" + id.value + "'", id.value);
  return *n;
}

const SliceNode* DataSliceGraph::find_spec(const AbstractSpec& spec) const { return find(NodeId::for_spec(spec)); }

std::string_view DataSliceGraph::mode() const {
  bool expert = std::any_of(meta_.sessions.begin(), meta_.sessions.end(),
                            [](const SessionRecord& s) { return s.role == Role::kExpert; });
  return expert ? "prediction" : "recommendation";
}

void DataSliceGraph::merge(const SessionSequence& seq) {
  if (seq.task_type != task_type_) {
    throw Error(ErrorCode::kTaskMismatch,
                "session '" + seq.session_id + "' is for task '" + seq.task_type + "', graph is for '" + task_type_ +
                    "'",
                seq.task_type);
  }
  seq.validate();
  std::vector<AbstractSpec> abstract;
  abstract.reserve(seq.events.size());
  for (const auto& e : seq.events) abstract.push_back(canonicalize(e.spec));
  for (std::size_t i = 1; i < abstract.size(); ++i) {
    if (op_distance(abstract[i - 1], abstract[i]) != 1) {
      throw Error(ErrorCode::kInvalidArgument, "session '" + seq.session_id + "' is not normalized at event " +
                                                   std::to_string(i));
    }
  }

  std::vector<NodeId> ids;
  ids.reserve(abstract.size());
  for (std::size_t i = 0; i < abstract.size(); ++i) {
    NodeId id = NodeId::for_spec(abstract[i]);
    auto [it, inserted] = nodes_.try_emplace(id);
    SliceNode& node = it->second;
    if (inserted) {
      node.id = id;
      node.spec = abstract[i];
    }
    node.interestingness_ms = std::max(node.interestingness_ms, seq.events[i].dwell_ms);
    node.visual_specs.insert(seq.events[i].visual);
    ids.push_back(std::move(id));
  }
  for (std::size_t i = 1; i < ids.size(); ++i) {
    EdgeKey key{ids[i - 1], ids[i]};
    auto it = edges_.find(key);
    if (it == edges_.end()) {
      SliceEdge fresh{ids[i - 1], ids[i], 0, 0, diff_ops(abstract[i - 1], abstract[i]).front()};
      it = edges_.emplace(std::move(key), std::move(fresh)).first;
    }
    SliceEdge& edge = it->second;
    (seq.role == Role::kExpert ? edge.expert_count : edge.user_count) += 1;
  }
  meta_.sessions.insert(std::upper_bound(meta_.sessions.begin(), meta_.sessions.end(),
                                         SessionRecord{seq.session_id, seq.role}),
                        SessionRecord{seq.session_id, seq.role});
  reindex();
}

void DataSliceGraph::add_vote(const NodeId& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw Error(ErrorCode::kUnknownNode, "unknown node '" + id.value + "'", id.value);
  ++it->second.votes;
}

void DataSliceGraph::insert_node(SliceNode node) {
  NodeId id = node.id;
  nodes_.insert_or_assign(std::move(id), std::move(node));
  reindex();
}

void DataSliceGraph::insert_edge(SliceEdge edge) {
  EdgeKey key{edge.from, edge.to};
  edges_.insert_or_assign(std::move(key), std::move(edge));
}

void DataSliceGraph::reindex() {
  order_.clear();
  order_.reserve(nodes_.size());
  std::size_t index = 0;
  for (auto& [id, node] : nodes_) {
    node.display_index = index++;
    order_.push_back(id);
  }
}

bool operator==(const DataSliceGraph& a, const DataSliceGraph& b) {
  return a.task_type_ == b.task_type_ && a.meta_ == b.meta_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
}

namespace {

DataSpecification fold_ops(DataSpecification spec, const std::vector<NavOp>& ops) {
  for (const auto& op : ops) spec = apply_nav_op(spec, op);
  return spec;
}

struct Visited {
  AbstractSpec abstract;
  DataSpecification concrete;
};

// Concrete specs strictly between `from` and `to`, each one op apart.
void route(const DataSpecification& from, const DataSpecification& to, const std::vector<Visited>& visited,
           std::vector<DataSpecification>& out) {
  AbstractSpec a = canonicalize(from);
  AbstractSpec b = canonicalize(to);
  std::size_t total = op_distance(a, b);
  if (total <= 1) return;

  const Visited* best = nullptr;
  std::size_t best_dist = 0;
  std::string best_key;
  for (const auto& v : visited) {
    std::size_t da = op_distance(a, v.abstract);
    if (da == 0 || da >= total || da + op_distance(v.abstract, b) != total) continue;
    std::string key = v.abstract.canonical_rendering();
    if (!best || da < best_dist || (da == best_dist && key < best_key)) {
      best = &v;
      best_dist = da;
      best_key = std::move(key);
    }
  }

  DataSpecification mid;
  if (best) {
    mid = fold_ops(from, diff_ops(from, best->concrete));
  } else {
    mid = apply_nav_op(from, diff_ops(from, to).front());
  }
  route(from, mid, visited, out);
  out.push_back(mid);
  route(mid, to, visited, out);
}

}  // namespace

SessionSequence normalize_sequence(const SessionSequence& seq) {
  seq.validate();
  SessionSequence collapsed{seq.session_id, seq.role, seq.task_type, {}};
  AbstractSpec last;
  for (const auto& e : seq.events) {
    AbstractSpec abs = canonicalize(e.spec);
    if (!collapsed.events.empty() && abs == last) {
      collapsed.events.back().dwell_ms += e.dwell_ms;
      continue;
    }
    collapsed.events.push_back(e);
    last = std::move(abs);
  }

  std::vector<Visited> visited;
  for (const auto& e : collapsed.events) {
    AbstractSpec abs = canonicalize(e.spec);
    bool seen = std::any_of(visited.begin(), visited.end(), [&](const Visited& v) { return v.abstract == abs; });
    if (!seen) visited.push_back({std::move(abs), e.spec});
  }

  SessionSequence out{seq.session_id, seq.role, seq.task_type, {}};
  for (std::size_t i = 0; i < collapsed.events.size(); ++i) {
    const SessionEvent& cur = collapsed.events[i];
    if (i > 0) {
      const SessionEvent& prev = collapsed.events[i - 1];
      std::vector<DataSpecification> mids;
      route(prev.spec, cur.spec, visited, mids);
      for (auto& m : mids) out.events.push_back(SessionEvent{std::move(m), prev.visual, 0, prev.timestamp_ms});
    }
    out.events.push_back(cur);
  }
  return out;
}

DataSliceGraph merge_sequence(DataSliceGraph graph, const SessionSequence& seq) {
  graph.merge(seq);
  return graph;
}

DataSliceGraph build_graph(const std::vector<SessionSequence>& sequences, const std::string& task_type,
                           GraphMeta meta) {
  meta.sessions.clear();
  DataSliceGraph graph(task_type, std::move(meta));
  for (const auto& seq : sequences) {
    if (seq.task_type != task_type) {
      throw Error(ErrorCode::kTaskMismatch,
                  "session '" + seq.session_id + "' is for task '" + seq.task_type + "', expected '" + task_type + "'",
                  seq.task_type);
    }
  }
  for (const auto& seq : sequences) graph.merge(normalize_sequence(seq));
  return graph;
}

DataSliceGraph upvote(DataSliceGraph graph, const NodeId& id) {
  graph.add_vote(id);
  return graph;
}

}  // namespace dataslicer
