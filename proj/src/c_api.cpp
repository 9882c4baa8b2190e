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

#include "dataslicer.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "dataslicer/api.hpp"
#include "dataslicer/codec.hpp"
#include "dataslicer/engine.hpp"
#include "dataslicer/error.hpp"
#include "dataslicer/graph_io.hpp"
#include "dataslicer/http_server.hpp"
#include "dataslicer/io.hpp"
#include "dataslicer/log_ingest.hpp"

struct ds_graph {
  dataslicer::DataSliceGraph graph;
};

struct ds_dataset {
  dataslicer::Dataset dataset;
};

struct ds_server {
  dataslicer::Engine engine;
  dataslicer::HttpServer http{engine};

  explicit ds_server(std::string dir) : engine(std::move(dir)) {}
};

namespace {

using dataslicer::ErrorCode;
using Json = nlohmann::json;

struct LastError {
  std::string message;
  std::string json;
};

thread_local LastError last_error;

ds_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return DS_ERR_INVALID_ARGUMENT;
    case ErrorCode::kInapplicableOp: return DS_ERR_INAPPLICABLE_OP;
    case ErrorCode::kSchemaMismatch: return DS_ERR_SCHEMA_MISMATCH;
    case ErrorCode::kTypeError: return DS_ERR_TYPE_ERROR;
    case ErrorCode::kTypeMismatch: return DS_ERR_TYPE_MISMATCH;
    case ErrorCode::kUnresolvedField: return DS_ERR_UNRESOLVED_FIELD;
    case ErrorCode::kUnsupportedField: return DS_ERR_UNSUPPORTED_FIELD;
    case ErrorCode::kUngroupedField: return DS_ERR_UNGROUPED_FIELD;
    case ErrorCode::kUnboundFilter: return DS_ERR_UNBOUND_FILTER;
    case ErrorCode::kFormatError: return DS_ERR_FORMAT;
    case ErrorCode::kTaskMismatch: return DS_ERR_TASK_MISMATCH;
    case ErrorCode::kUnknownNode: return DS_ERR_UNKNOWN_NODE;
    case ErrorCode::kUnknownGraph: return DS_ERR_UNKNOWN_GRAPH;
    case ErrorCode::kUnknownDataset: return DS_ERR_UNKNOWN_DATASET;
    case ErrorCode::kEmptyGraph: return DS_ERR_EMPTY_GRAPH;
    case ErrorCode::kInconsistentSession: return DS_ERR_INCONSISTENT_SESSION;
    case ErrorCode::kUnknownSession: return DS_ERR_UNKNOWN_SESSION;
    case ErrorCode::kIoError: return DS_ERR_IO;
    case ErrorCode::kInternal: return DS_ERR_INTERNAL;
  }
  return DS_ERR_INTERNAL;
}

ds_status fail(ds_status status, const std::exception& e) {
  last_error.message = e.what();
  last_error.json = dataslicer::api::error_body(e).dump();
  return status;
}

ds_status fail_argument(const char* what) {
  return fail(DS_ERR_INVALID_ARGUMENT, dataslicer::Error(ErrorCode::kInvalidArgument, what));
}

// Runs `fn`, translating exceptions into a status and the thread's last error.
template <typename Fn>
ds_status guarded(Fn&& fn) {
  try {
    fn();
    last_error = {};
    return DS_OK;
  } catch (const dataslicer::Error& e) {
    return fail(to_status(e.code()), e);
  } catch (const Json::exception& e) {
    return fail(DS_ERR_FORMAT, e);
  } catch (const std::bad_alloc& e) {
    return fail(DS_ERR_INTERNAL, e);
  } catch (const std::exception& e) {
    return fail(DS_ERR_INTERNAL, e);
  } catch (...) {
    return fail(DS_ERR_INTERNAL, std::runtime_error("unknown exception"));
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void put(char** out, const Json& doc) { *out = dup_string(doc.dump()); }

Json request(const char* text) { return dataslicer::codec::parse_json(text, "request"); }

dataslicer::GraphMeta meta_for(const char* dataset, double threshold_ms) {
  dataslicer::GraphMeta meta;
  if (dataset) meta.dataset = dataset;
  if (threshold_ms >= 0) meta.threshold_ms = threshold_ms;
  return meta;
}

}  // namespace

extern "C" {

const char* ds_version(void) { return "0.1.0"; }

const char* ds_status_name(ds_status status) {
  static const char* const kNames[] = {
      "OK",           "InvalidArgument",  "InapplicableOp",  "SchemaMismatch", "TypeError",
      "TypeMismatch", "UnresolvedField",  "UnsupportedField", "UngroupedField", "UnboundFilter",
      "FormatError",  "TaskMismatch",     "UnknownNode",     "UnknownGraph",   "UnknownDataset",
      "EmptyGraph",   "InconsistentSession", "UnknownSession", "IoError",      "Internal"};
  auto i = static_cast<std::size_t>(status);
  return i < std::size(kNames) ? kNames[i] : "Unknown";
}

const char* ds_last_error_message(void) { return last_error.message.c_str(); }
const char* ds_last_error_json(void) { return last_error.json.c_str(); }

void ds_string_free(char* s) { std::free(s); }

ds_status ds_graph_build_from_log(const char* log_text, const char* task_type, const char* dataset,
                                  double threshold_ms, ds_graph** out) {
  if (!log_text || !task_type || !out) return fail_argument("log_text, task_type and out are required");
  return guarded([&] {
    auto seqs = dataslicer::parse_session_log(std::string_view(log_text));
    *out = new ds_graph{dataslicer::build_graph(seqs, task_type, meta_for(dataset, threshold_ms))};
  });
}

ds_status ds_graph_build_from_log_file(const char* log_path, const char* task_type, const char* dataset,
                                       double threshold_ms, ds_graph** out) {
  if (!log_path || !task_type || !out) return fail_argument("log_path, task_type and out are required");
  return guarded([&] {
    auto seqs = dataslicer::parse_session_log(std::string_view(dataslicer::read_text_file(log_path)));
    *out = new ds_graph{dataslicer::build_graph(seqs, task_type, meta_for(dataset, threshold_ms))};
  });
}

ds_status ds_graph_parse(const char* graph_json, ds_graph** out) {
  if (!graph_json || !out) return fail_argument("graph_json and out are required");
  return guarded([&] { *out = new ds_graph{dataslicer::parse_graph(graph_json)}; });
}

ds_status ds_graph_load(const char* path, ds_graph** out) {
  if (!path || !out) return fail_argument("path and out are required");
  return guarded([&] { *out = new ds_graph{dataslicer::load_graph(path)}; });
}

ds_status ds_graph_save(const ds_graph* graph, const char* path) {
  if (!graph || !path) return fail_argument("graph and path are required");
  return guarded([&] { dataslicer::save_graph(graph->graph, path); });
}

ds_status ds_graph_to_json(const ds_graph* graph, char** out) {
  if (!graph || !out) return fail_argument("graph and out are required");
  return guarded([&] { *out = dup_string(dataslicer::serialize_graph(graph->graph)); });
}

ds_status ds_graph_stats(const ds_graph* graph, char** out) {
  if (!graph || !out) return fail_argument("graph and out are required");
  return guarded([&] { put(out, dataslicer::api::graph_stats(graph->graph)); });
}

size_t ds_graph_node_count(const ds_graph* graph) { return graph ? graph->graph.nodes().size() : 0; }
size_t ds_graph_edge_count(const ds_graph* graph) { return graph ? graph->graph.edges().size() : 0; }

ds_status ds_graph_upvote(ds_graph* graph, const char* node_id) {
  if (!graph || !node_id) return fail_argument("graph and node_id are required");
  return guarded([&] { graph->graph.add_vote(dataslicer::NodeId{node_id}); });
}

void ds_graph_free(ds_graph* graph) { delete graph; }

ds_status ds_dataset_parse(const char* csv_text, const char* schema_json, ds_dataset** out) {
  if (!csv_text || !schema_json || !out) return fail_argument("csv_text, schema_json and out are required");
  return guarded([&] {
    auto schema = dataslicer::decode_schema(dataslicer::codec::parse_json(schema_json, "schema"));
    *out = new ds_dataset{dataslicer::load_dataset(csv_text, std::move(schema))};
  });
}

ds_status ds_dataset_load(const char* csv_path, const char* schema_path, ds_dataset** out) {
  if (!csv_path || !schema_path || !out) return fail_argument("csv_path, schema_path and out are required");
  return guarded([&] {
    *out = new ds_dataset{dataslicer::load_dataset_file(csv_path, dataslicer::load_schema_file(schema_path))};
  });
}

size_t ds_dataset_row_count(const ds_dataset* dataset) { return dataset ? dataset->dataset.row_count() : 0; }

void ds_dataset_free(ds_dataset* dataset) { delete dataset; }

ds_status ds_match(const ds_graph* graph, const char* request_json, char** out) {
  if (!graph || !request_json || !out) return fail_argument("graph, request_json and out are required");
  return guarded([&] { put(out, dataslicer::api::match(graph->graph, request(request_json))); });
}

ds_status ds_recommend(const ds_graph* graph, const ds_dataset* dataset, const char* request_json, char** out) {
  if (!graph || !request_json || !out) return fail_argument("graph, request_json and out are required");
  return guarded([&] {
    const dataslicer::DatasetSchema* schema = dataset ? &dataset->dataset.schema() : nullptr;
    put(out, dataslicer::api::recommend(graph->graph, schema, request(request_json)));
  });
}

ds_status ds_evaluate(const ds_dataset* dataset, const char* request_json, char** out) {
  if (!dataset || !request_json || !out) return fail_argument("dataset, request_json and out are required");
  return guarded([&] { put(out, dataslicer::api::evaluate(dataset->dataset, request(request_json))); });
}

ds_status ds_sql_template(const ds_dataset* dataset, const char* request_json, char** out) {
  if (!dataset || !request_json || !out) return fail_argument("dataset, request_json and out are required");
  return guarded([&] { put(out, dataslicer::api::sql_template(dataset->dataset.schema(), request(request_json))); });
}

ds_status ds_server_create(const ds_graph* graph, const char* graph_path, const ds_dataset* dataset,
                           ds_server** out) {
  if (!out) return fail_argument("out is required");
  return guarded([&] {
    auto server = std::make_unique<ds_server>(std::string());
    if (graph) server->engine.put_graph(graph->graph, graph_path ? graph_path : "");
    if (dataset) server->engine.put_dataset(dataset->dataset);
    *out = server.release();
  });
}

ds_status ds_server_bind(ds_server* server, const char* host, int port, int* bound_port) {
  if (!server || !host) return fail_argument("server and host are required");
  return guarded([&] {
    int p = server->http.bind(host, port);
    if (bound_port) *bound_port = p;
  });
}

ds_status ds_server_listen(ds_server* server) {
  if (!server) return fail_argument("server is required");
  return guarded([&] { server->http.listen(); });
}

void ds_server_stop(ds_server* server) {
  if (server) server->http.stop();
}

void ds_server_free(ds_server* server) { delete server; }

}  // extern "C"
