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

#include "dataslicer/graph_io.hpp"

#include <set>

#include "dataslicer/codec.hpp"
#include "dataslicer/error.hpp"
#include "dataslicer/io.hpp"

namespace dataslicer {

using codec::Json;

namespace {

[[noreturn]] void fail(const std::string& message, const std::string& where) {
  throw Error(ErrorCode::kFormatError, "graph: " + message + " at " + (where.empty() ? "/" : where), where);
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail("expected object", where);
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing '") + key + "'", where + "/" + key);
  return *it;
}

std::string get_string(const Json& obj, const char* key, const std::string& where) {
  const Json& v = member(obj, key, where);
  if (!v.is_string()) fail(std::string("'") + key + "' must be a string", where + "/" + key);
  return v.get<std::string>();
}

std::int64_t get_count(const Json& obj, const char* key, const std::string& where) {
  const Json& v = member(obj, key, where);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    fail(std::string("'") + key + "' must be a nonnegative integer", where + "/" + key);
  }
  return v.get<std::int64_t>();
}

const Json& get_array(const Json& obj, const char* key, const std::string& where) {
  const Json& v = member(obj, key, where);
  if (!v.is_array()) fail(std::string("'") + key + "' must be an array", where + "/" + key);
  return v;
}

}  // namespace

Role parse_role(const std::string& text, const std::string& where) {
  if (text == "expert") return Role::kExpert;
  if (text == "regular") return Role::kRegular;
  throw Error(ErrorCode::kFormatError, "unknown role '" + text + "' at " + where, where);
}

Json encode_graph(const DataSliceGraph& graph) {
  Json sessions = Json::array();
  for (const auto& s : graph.meta().sessions) {
    sessions.push_back({{"sessionId", s.session_id}, {"role", std::string(role_name(s.role))}});
  }
  Json nodes = Json::array();
  for (const auto& id : graph.ordered_ids()) {
    const SliceNode& n = graph.node(id);
    Json visuals = Json::array();
    for (const auto& v : n.visual_specs) visuals.push_back(codec::encode_visual(v));
    nodes.push_back({{"nodeId", n.id.value},
                     {"displayIndex", n.display_index},
                     {"spec", codec::encode_abstract_spec(n.spec)},
                     {"interestingnessMs", n.interestingness_ms},
                     {"votes", n.votes},
                     {"visualSpecs", std::move(visuals)}});
  }
  Json edges = Json::array();
  for (const auto& [key, e] : graph.edges()) {
    edges.push_back({{"from", e.from.value},
                     {"to", e.to.value},
                     {"expertCount", e.expert_count},
                     {"userCount", e.user_count},
                     {"navOp", codec::encode_nav_op(e.nav_op)}});
  }
  return Json{{"version", kGraphFormatVersion},
              {"taskType", graph.task_type()},
              {"meta",
               {{"dataset", graph.meta().dataset},
                {"thresholdMs", graph.meta().threshold_ms},
                {"sessions", std::move(sessions)}}},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)}};
}

DataSliceGraph decode_graph(const Json& doc) {
  const Json& version = member(doc, "version", "");
  if (!version.is_number_integer() || version.get<int>() != kGraphFormatVersion) {
    fail("unsupported version", "/version");
  }
  std::string task = get_string(doc, "taskType", "");

  GraphMeta meta;
  const Json& mdoc = member(doc, "meta", "");
  meta.dataset = get_string(mdoc, "dataset", "/meta");
  const Json& thr = member(mdoc, "thresholdMs", "/meta");
  if (!thr.is_number() || thr.get<double>() < 0) fail("'thresholdMs' must be a nonnegative number", "/meta/thresholdMs");
  meta.threshold_ms = thr.get<double>();
  const Json& sessions = get_array(mdoc, "sessions", "/meta");
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    std::string where = "/meta/sessions/" + std::to_string(i);
    meta.sessions.push_back(
        {get_string(sessions[i], "sessionId", where), parse_role(get_string(sessions[i], "role", where), where + "/role")});
  }

  DataSliceGraph graph(task, meta);
  const Json& nodes = get_array(doc, "nodes", "");
  std::map<NodeId, std::pair<std::size_t, std::size_t>> stated_index;  // id -> (stated, position)
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string where = "/nodes/" + std::to_string(i);
    const Json& n = nodes[i];
    SliceNode node;
    node.id = NodeId{get_string(n, "nodeId", where)};
    node.spec = codec::decode_abstract_spec(member(n, "spec", where), where + "/spec");
    if (NodeId::for_spec(node.spec) != node.id) fail("nodeId does not match spec hash", where + "/nodeId");
    if (graph.find(node.id) || stated_index.count(node.id)) fail("duplicate node", where + "/nodeId");
    stated_index[node.id] = {static_cast<std::size_t>(get_count(n, "displayIndex", where)), i};
    node.interestingness_ms = get_count(n, "interestingnessMs", where);
    node.votes = get_count(n, "votes", where);
    const Json& visuals = get_array(n, "visualSpecs", where);
    for (std::size_t j = 0; j < visuals.size(); ++j) {
      node.visual_specs.insert(codec::decode_visual(visuals[j], where + "/visualSpecs/" + std::to_string(j)));
    }
    graph.insert_node(std::move(node));
  }
  for (const auto& [id, stated] : stated_index) {
    if (graph.node(id).display_index != stated.first) {
      fail("displayIndex is not the node's rank", "/nodes/" + std::to_string(stated.second) + "/displayIndex");
    }
  }

  const Json& edges = get_array(doc, "edges", "");
  std::set<EdgeKey> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string where = "/edges/" + std::to_string(i);
    const Json& e = edges[i];
    NodeId from{get_string(e, "from", where)};
    NodeId to{get_string(e, "to", where)};
    const SliceNode* a = graph.find(from);
    const SliceNode* b = graph.find(to);
    if (!a) fail("edge source is not a node", where + "/from");
    if (!b) fail("edge target is not a node", where + "/to");
    if (!seen.insert({from, to}).second) fail("duplicate edge", where);
    std::int64_t experts = get_count(e, "expertCount", where);
    std::int64_t users = get_count(e, "userCount", where);
    if (experts + users == 0) fail("edge with no traversals", where);
    NavOp op = codec::decode_nav_op(member(e, "navOp", where), where + "/navOp");
    if (op_distance(a->spec, b->spec) != 1 || diff_ops(a->spec, b->spec).front() != op) {
      fail("navOp does not turn source into target", where + "/navOp");
    }
    graph.insert_edge(SliceEdge{std::move(from), std::move(to), experts, users, std::move(op)});
  }
  return graph;
}

std::string serialize_graph(const DataSliceGraph& graph) { return encode_graph(graph).dump(2) + "\n"; }

DataSliceGraph parse_graph(const std::string& text) { return decode_graph(codec::parse_json(text, "graph")); }

void save_graph(const DataSliceGraph& graph, const std::string& path) { write_text_file(path, serialize_graph(graph)); }

DataSliceGraph load_graph(const std::string& path) { return parse_graph(read_text_file(path)); }

}  // namespace dataslicer
