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


/* Compiles the public header as C and drives a few calls. */

#include <stdio.h>
#include <string.h>

#include "dataslicer.h"

int main(void) {
  ds_graph* g = NULL;
  char* out = NULL;
  const char* log =
      "{\"sessionId\":\"s\",\"role\":\"regular\",\"taskType\":\"t\",\"timestampMs\":1,\"dwellMs\":4000,"
      "\"spec\":{\"x\":\"a\"},\"visual\":{\"chartType\":\"table\",\"encodings\":[]}}\n";
  if (ds_graph_build_from_log(log, "t", "", 3000.0, &g) != DS_OK) {
    fprintf(stderr, "build: %s\n", ds_last_error_message());
    return 1;
  }
  if (ds_graph_node_count(g) != 1) return 1;
  if (ds_recommend(g, NULL, "{\"spec\":{\"x\":\"a\"}}", &out) != DS_OK) return 1;
  if (strstr(out, "\"recommendations\"") == NULL) return 1;
  ds_string_free(out);
  if (ds_graph_upvote(g, "zz") != DS_ERR_UNKNOWN_NODE) return 1;
  if (strcmp(ds_status_name(DS_ERR_UNKNOWN_NODE), "UnknownNode") != 0) return 1;
  ds_graph_free(g);
  puts("ok");
  return 0;
}
