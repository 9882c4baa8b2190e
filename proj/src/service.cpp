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

#include "dataslicer/service.hpp"

#include <algorithm>
#include <cctype>

#include "dataslicer/codec.hpp"
#include "dataslicer/error.hpp"
#include "dataslicer/query.hpp"

namespace dataslicer {

using codec::Json;

DataSpecification contextualize(const AbstractSpec& node_spec, const DataSpecification& current) {
  DataSpecification out;
  out.x = node_spec.x;
  out.y = node_spec.y;
  out.layers = node_spec.layers;
  out.grouping = node_spec.grouping;
  for (const auto& field : node_spec.filter_descriptors) {
    bool bound = false;
    for (const auto& p : current.filters) {
      if (p.field == field && !p.is_placeholder()) {
        out.filters.push_back(p);
        bound = true;
      }
    }
    if (!bound) out.filters.push_back(FilterPredicate::placeholder(field));
  }
  return out;
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

ColumnRole role_of(const FieldExpr& f, const DatasetSchema* schema) {
  if (!f.is_simple()) return ColumnRole::kNone;
  if (schema) {
    const ColumnDef* c = schema->find(f.name());
    return c ? c->role : ColumnRole::kNone;
  }
  std::string n = lower(f.name());
  if (n == "lat" || n == "latitude") return ColumnRole::kLatitude;
  if (n == "lon" || n == "lng" || n == "long" || n == "longitude") return ColumnRole::kLongitude;
  return ColumnRole::kNone;
}

bool is_temporal(const FieldExpr& f, const DatasetSchema* schema) {
  if (!f.is_simple()) return false;
  if (schema) {
    const ColumnDef* c = schema->find(f.name());
    return c && c->type == ColumnType::kDatetime;
  }
  std::string n = lower(f.name());
  return n == "time" || n == "date" || n == "timestamp" || n == "datetime";
}

std::vector<FieldExpr> selected(const AbstractSpec& s) {
  std::vector<FieldExpr> out;
  if (s.x) out.push_back(*s.x);
  if (s.y) out.push_back(*s.y);
  out.insert(out.end(), s.layers.begin(), s.layers.end());
  return out;
}

}  // namespace

VisualSpec default_visual_spec(const AbstractSpec& spec, const DatasetSchema* schema) {
  static const char* const kLayerCues[] = {"color", "size", "label"};
  VisualSpec v;
  auto fields = selected(spec);
  bool has_lat = false, has_lon = false;
  std::size_t aggregates = 0, dimensions = 0;
  for (const auto& f : fields) {
    ColumnRole r = role_of(f, schema);
    has_lat |= r == ColumnRole::kLatitude;
    has_lon |= r == ColumnRole::kLongitude;
    if (f.contains_aggregate()) {
      ++aggregates;
    } else {
      ++dimensions;
    }
  }

  if (has_lat && has_lon) {
    v.chart_type = "map-scatter";
  } else if (spec.x && is_temporal(*spec.x, schema) && aggregates > 0) {
    v.chart_type = "line";
  } else if (dimensions == 1 && aggregates > 0) {
    v.chart_type = "bar";
  } else if (!spec.x && !spec.y && fields.size() == 1 && aggregates == 1) {
    v.chart_type = "box-plot";
  } else {
    v.chart_type = "table";
  }

  std::size_t cue = 0;
  for (const auto& f : fields) {
    std::string name;
    ColumnRole r = role_of(f, schema);
    if (v.chart_type == "map-scatter" && r == ColumnRole::kLatitude) {
      name = "latitude";
    } else if (v.chart_type == "map-scatter" && r == ColumnRole::kLongitude) {
      name = "longitude";
    } else if (spec.x && f == *spec.x) {
      name = "x";
    } else if (spec.y && f == *spec.y) {
      name = "y";
    } else if (v.chart_type == "table" || v.chart_type == "box-plot") {
      name = "column";
    } else {
      name = cue < std::size(kLayerCues) ? kLayerCues[cue] : "tooltip";
      ++cue;
    }
    v.encodings.push_back({f, std::move(name)});
  }
  return v;
}

VisualSpec choose_visual_spec(const SliceNode& node, const std::optional<VisualSpec>& user_pref,
                              const DatasetSchema* schema) {
  auto fields = selected(node.spec);
  if (user_pref) {
    bool covers = std::all_of(fields.begin(), fields.end(), [&](const FieldExpr& f) {
      return std::any_of(user_pref->encodings.begin(), user_pref->encodings.end(),
                         [&](const Encoding& e) { return e.field == f; });
    });
    if (covers) {
      VisualSpec v = *user_pref;
      std::erase_if(v.encodings, [&](const Encoding& e) {
        return std::find(fields.begin(), fields.end(), e.field) == fields.end();
      });
      return v;
    }
  }
  if (!node.visual_specs.empty()) return *node.visual_specs.begin();
  return default_visual_spec(node.spec, schema);
}

std::vector<Recommendation> recommend(const DataSliceGraph& graph, const DatasetSchema* schema,
                                      const DataSpecification& current, const RecommendOptions& options) {
  current.validate();
  double threshold = options.threshold_ms.value_or(graph.meta().threshold_ms);
  if (!(threshold >= 0)) throw Error(ErrorCode::kInvalidArgument, "threshold must be nonnegative");
  std::vector<Recommendation> out;
  if (options.max_results == 0) {
    if (graph.nodes().empty()) throw Error(ErrorCode::kEmptyGraph, "graph '" + graph.task_type() + "' has no nodes");
    return out;
  }
  MatchResult matched = match_data_slices(graph, canonicalize(current), options.max_results);
  for (auto& ranked : rank_data_slices(graph, matched.ids(), options.max_results, threshold)) {
    const SliceNode& node = graph.node(ranked.id);
    Recommendation rec;
    rec.concrete_spec = contextualize(node.spec, current);
    rec.visual = choose_visual_spec(node, options.user_pref, schema);
    if (schema) rec.sql_template = to_sql_template(rec.concrete_spec, *schema);
    rec.visited = options.visited.count(ranked.id) > 0;
    rec.ranked = std::move(ranked);
    out.push_back(std::move(rec));
  }
  return out;
}

Json encode_match_result(const MatchResult& result) {
  Json nodes = Json::array();
  for (const auto& n : result.nodes) {
    nodes.push_back({{"nodeId", n.id.value}, {"displayIndex", n.display_index}, {"distance", n.distance}});
  }
  return Json{{"minDistance", result.min_distance}, {"nodes", std::move(nodes)}};
}

Json encode_recommendations(const DataSliceGraph& graph, const std::vector<Recommendation>& recs,
                            double threshold_ms) {
  Json list = Json::array();
  for (const auto& r : recs) {
    Json unbound = Json::array();
    for (const auto& p : r.concrete_spec.filters) {
      if (p.is_placeholder()) unbound.push_back(p.field.canonical());
    }
    list.push_back({{"nodeId", r.ranked.id.value},
                    {"displayIndex", r.ranked.display_index},
                    {"pathDistance", r.ranked.path_distance ? Json(*r.ranked.path_distance) : Json(nullptr)},
                    {"effectiveInterestingness", r.ranked.effective_interestingness},
                    {"viaFill", r.ranked.via_fill},
                    {"visited", r.visited},
                    {"concreteSpec", codec::encode_spec(r.concrete_spec)},
                    {"unboundFilters", std::move(unbound)},
                    {"visual", codec::encode_visual(r.visual)},
                    {"sqlTemplate", r.sql_template ? Json(*r.sql_template) : Json(nullptr)}});
  }
  return Json{{"taskType", graph.task_type()},
              {"mode", std::string(graph.mode())},
              {"thresholdMs", threshold_ms},
              {"recommendations", std::move(list)}};
}

}  // namespace dataslicer
