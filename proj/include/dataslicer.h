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

#ifndef DATASLICER_H_
#define DATASLICER_H_

/*
 * C interface to the DataSlicer recommendation engine.
 *
 * Objects are opaque handles released with their *_free function. Calls
 * return DS_OK or an error status; the message and a JSON error body
 * ({code, message, detail}) for the last failure on the calling thread are
 * available from ds_last_error_message() and ds_last_error_json().
 *
 * Strings returned through `char** out` are heap allocated and must be
 * released with ds_string_free(). Request and response documents are UTF-8
 * JSON.
 */

#include <stddef.h>

#if defined(_WIN32)
#define DS_API __declspec(dllexport)
#else
#define DS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ds_status {
  DS_OK = 0,
  DS_ERR_INVALID_ARGUMENT = 1,
  DS_ERR_INAPPLICABLE_OP = 2,
  DS_ERR_SCHEMA_MISMATCH = 3,
  DS_ERR_TYPE_ERROR = 4,
  DS_ERR_TYPE_MISMATCH = 5,
  DS_ERR_UNRESOLVED_FIELD = 6,
  DS_ERR_UNSUPPORTED_FIELD = 7,
  DS_ERR_UNGROUPED_FIELD = 8,
  DS_ERR_UNBOUND_FILTER = 9,
  DS_ERR_FORMAT = 10,
  DS_ERR_TASK_MISMATCH = 11,
  DS_ERR_UNKNOWN_NODE = 12,
  DS_ERR_UNKNOWN_GRAPH = 13,
  DS_ERR_UNKNOWN_DATASET = 14,
  DS_ERR_EMPTY_GRAPH = 15,
  DS_ERR_INCONSISTENT_SESSION = 16,
  DS_ERR_UNKNOWN_SESSION = 17,
  DS_ERR_IO = 18,
  DS_ERR_INTERNAL = 19
} ds_status;

typedef struct ds_graph ds_graph;
typedef struct ds_dataset ds_dataset;
typedef struct ds_server ds_server;

DS_API const char* ds_version(void);
/* "InvalidArgument", "UnknownNode", ...; "OK" for DS_OK, "Unknown" outside the enum. */
DS_API const char* ds_status_name(ds_status status);

/* Valid until the next failing call on the same thread. Empty after success. */
DS_API const char* ds_last_error_message(void);
DS_API const char* ds_last_error_json(void);

DS_API void ds_string_free(char* s);

/* Graphs. threshold_ms < 0 keeps the default (3000). dataset may be NULL. */
DS_API ds_status ds_graph_build_from_log(const char* log_text, const char* task_type, const char* dataset,
                                         double threshold_ms, ds_graph** out);
DS_API ds_status ds_graph_build_from_log_file(const char* log_path, const char* task_type, const char* dataset,
                                              double threshold_ms, ds_graph** out);
DS_API ds_status ds_graph_parse(const char* graph_json, ds_graph** out);
DS_API ds_status ds_graph_load(const char* path, ds_graph** out);
DS_API ds_status ds_graph_save(const ds_graph* graph, const char* path);
DS_API ds_status ds_graph_to_json(const ds_graph* graph, char** out);
/* {taskType, mode, sessions, nodes, edges} */
DS_API ds_status ds_graph_stats(const ds_graph* graph, char** out);
DS_API size_t ds_graph_node_count(const ds_graph* graph);
DS_API size_t ds_graph_edge_count(const ds_graph* graph);
DS_API ds_status ds_graph_upvote(ds_graph* graph, const char* node_id);
DS_API void ds_graph_free(ds_graph* graph);

/* Datasets. The schema document names the table and types every column. */
DS_API ds_status ds_dataset_parse(const char* csv_text, const char* schema_json, ds_dataset** out);
DS_API ds_status ds_dataset_load(const char* csv_path, const char* schema_path, ds_dataset** out);
DS_API size_t ds_dataset_row_count(const ds_dataset* dataset);
DS_API void ds_dataset_free(ds_dataset* dataset);

/* Requests. The bodies match the HTTP endpoints of the same name. */
DS_API ds_status ds_match(const ds_graph* graph, const char* request_json, char** out);
/* dataset may be NULL; recommendations then carry no SQL template. */
DS_API ds_status ds_recommend(const ds_graph* graph, const ds_dataset* dataset, const char* request_json,
                              char** out);
DS_API ds_status ds_evaluate(const ds_dataset* dataset, const char* request_json, char** out);
DS_API ds_status ds_sql_template(const ds_dataset* dataset, const char* request_json, char** out);

/*
 * HTTP server. The graph and dataset are copied and may be NULL. When
 * graph_path is set the graph is saved there after every mutation.
 */
DS_API ds_status ds_server_create(const ds_graph* graph, const char* graph_path, const ds_dataset* dataset,
                                  ds_server** out);
/* port 0 picks a free port; the bound port is stored in *bound_port. */
DS_API ds_status ds_server_bind(ds_server* server, const char* host, int port, int* bound_port);
/* Blocks until ds_server_stop() is called from another thread. */
DS_API ds_status ds_server_listen(ds_server* server);
DS_API void ds_server_stop(ds_server* server);
DS_API void ds_server_free(ds_server* server);

#ifdef __cplusplus
}
#endif

#endif /* DATASLICER_H_ */
