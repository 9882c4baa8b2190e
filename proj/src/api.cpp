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

#include "dataslicer/api.hpp"

#include "dataslicer/codec.hpp"
#include "dataslicer/error.hpp"
#include "dataslicer/matcher.hpp"
#include "dataslicer/query.hpp"
#include "dataslicer/service.hpp"

namespace dataslicer::api {

namespace {

[[noreturn]] void bad(const std::string& message, const std::string& where) {
  throw Error(ErrorCode::kFormatError, "request: " + message + " at " + where, where);
}

// Well-formed but out of range.
[[noreturn]] void out_of_range(const std::string& message, const std::string& where) {
  throw Error(ErrorCode::kInvalidArgument, "request: " + message + " at " + where, where);
}

void require_object(const Json& body) {
  if (!body.is_object()) bad("body must be a JSON object", "/");
}

DataSpecification spec_of(const Json& body) {
  require_object(body);
  auto it = body.find("spec");
  if (it == body.end()) bad("missing 'spec'", "/spec");
  return codec::decode_spec(*it, "/spec");
}

std::size_t count_of(const Json& body, std::size_t fallback, std::size_t minimum) {
  auto it = body.find("M");
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_number_integer() || it->get<std::int64_t>() < static_cast<std::int64_t>(minimum)) {
    out_of_range("'M' must be an integer >= " + std::to_string(minimum), "/M");
  }
  return it->get<std::size_t>();
}

}  // namespace

Json match(const DataSliceGraph& graph, const Json& body) {
  DataSpecification spec = spec_of(body);
  std::size_t m = count_of(body, kDefaultMaxResults, 1);
  return encode_match_result(match_data_slices(graph, canonicalize(spec), m));
}

Json recommend(const DataSliceGraph& graph, const DatasetSchema* schema, const Json& body,
               const std::set<NodeId>& visited) {
  DataSpecification spec = spec_of(body);
  RecommendOptions options;
  options.max_results = count_of(body, kDefaultMaxResults, 0);
  if (auto it = body.find("T"); it != body.end() && !it->is_null()) {
    if (!it->is_number() || it->get<double>() < 0) out_of_range("'T' must be a nonnegative number", "/T");
    options.threshold_ms = it->get<double>();
  }
  if (auto it = body.find("userPref"); it != body.end() && !it->is_null()) {
    options.user_pref = codec::decode_visual(*it, "/userPref");
  }
  options.visited = visited;
  auto recs = dataslicer::recommend(graph, schema, spec, options);
  return encode_recommendations(graph, recs, options.threshold_ms.value_or(graph.meta().threshold_ms));
}

Json evaluate(const Dataset& dataset, const Json& body) {
  DataSpecification spec = spec_of(body);
  Json out = encode_result_table(dataslicer::evaluate(dataset, spec));
  out["sql"] = to_sql_template(spec, dataset.schema());
  return out;
}

Json sql_template(const DatasetSchema& schema, const Json& body) {
  return Json{{"sql", to_sql_template(spec_of(body), schema)}};
}

Json graph_stats(const DataSliceGraph& graph) {
  return Json{{"taskType", graph.task_type()},
              {"mode", std::string(graph.mode())},
              {"sessions", graph.meta().sessions.size()},
              {"nodes", graph.nodes().size()},
              {"edges", graph.edges().size()}};
}

Json error_body(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return Json{{"code", std::string(error_code_name(err->code()))}, {"message", err->what()}, {"detail", err->detail()}};
  }
  if (dynamic_cast<const Json::exception*>(&e)) {
    return Json{{"code", "FormatError"}, {"message", e.what()}, {"detail", ""}};
  }
  return Json{{"code", "Internal"}, {"message", e.what()}, {"detail", ""}};
}

}  // namespace dataslicer::api
