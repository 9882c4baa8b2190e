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


#include <gtest/gtest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "dataslicer.h"
#include "test_support.hpp"

namespace {

using Json = nlohmann::json;

std::string take(char* s) {
  std::string out = s ? s : "";
  ds_string_free(s);
  return out;
}

ds_graph* fig3() {
  ds_graph* g = nullptr;
  auto log = dstest::read_fixture("fig3_session.log");
  EXPECT_EQ(ds_graph_build_from_log(log.c_str(), "task1", "Earthquakes", 3000, &g), DS_OK) << ds_last_error_message();
  return g;
}

ds_dataset* quakes() {
  ds_dataset* d = nullptr;
  auto csv = dstest::read_fixture("earthquakes9.csv");
  auto schema = dstest::read_fixture("earthquakes.schema.json");
  EXPECT_EQ(ds_dataset_parse(csv.c_str(), schema.c_str(), &d), DS_OK) << ds_last_error_message();
  return d;
}

std::string fig1b_request(int M) {
  Json req{{"spec", Json::parse(dstest::read_fixture("fig1b_spec.json"))}, {"M", M}};
  return req.dump();
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(ds_version(), "0.1.0");
  EXPECT_STREQ(ds_status_name(DS_OK), "OK");
  EXPECT_STREQ(ds_status_name(DS_ERR_TASK_MISMATCH), "TaskMismatch");
  EXPECT_STREQ(ds_status_name(static_cast<ds_status>(99)), "Unknown");
}

TEST(CApi, BuildMatchRecommend) {
  ds_graph* g = fig3();
  ASSERT_NE(g, nullptr);
  EXPECT_EQ(ds_graph_node_count(g), 6u);
  EXPECT_EQ(ds_graph_edge_count(g), 8u);
  char* out = nullptr;
  ASSERT_EQ(ds_match(g, fig1b_request(3).c_str(), &out), DS_OK);
  EXPECT_EQ(Json::parse(take(out))["minDistance"], 5);
  ds_dataset* d = quakes();
  ASSERT_EQ(ds_recommend(g, d, fig1b_request(2).c_str(), &out), DS_OK) << ds_last_error_message();
  auto rec = Json::parse(take(out));
  ASSERT_EQ(rec["recommendations"].size(), 2u);
  EXPECT_TRUE(rec["recommendations"][0]["sqlTemplate"].is_string());
  ASSERT_EQ(ds_recommend(g, nullptr, fig1b_request(2).c_str(), &out), DS_OK);
  EXPECT_TRUE(Json::parse(take(out))["recommendations"][0]["sqlTemplate"].is_null());
  ASSERT_EQ(ds_graph_stats(g, &out), DS_OK);
  EXPECT_EQ(Json::parse(take(out))["mode"], "prediction");
  ds_dataset_free(d);
  ds_graph_free(g);
}

TEST(CApi, EvaluateAndSql) {
  ds_dataset* d = quakes();
  EXPECT_EQ(ds_dataset_row_count(d), 9u);
  char* out = nullptr;
  ASSERT_EQ(ds_sql_template(d, fig1b_request(1).c_str(), &out), DS_OK);
  EXPECT_EQ(Json::parse(take(out))["sql"].get<std::string>().rfind("SELECT latitude, longitude", 0), 0u);
  ASSERT_EQ(ds_evaluate(d, fig1b_request(1).c_str(), &out), DS_OK);
  EXPECT_EQ(Json::parse(take(out))["rows"].size(), 4u);
  ds_dataset_free(d);
}

TEST(CApi, ErrorsSetStatusAndJson) {
  ds_graph* g = nullptr;
  auto log = dstest::read_fixture("fig3_session.log");
  EXPECT_EQ(ds_graph_build_from_log(log.c_str(), "other", "", 3000, &g), DS_ERR_TASK_MISMATCH);
  EXPECT_EQ(g, nullptr);
  EXPECT_NE(std::strstr(ds_last_error_message(), "task1"), nullptr);
  EXPECT_EQ(Json::parse(ds_last_error_json())["code"], "TaskMismatch");

  EXPECT_EQ(ds_graph_parse("{", &g), DS_ERR_FORMAT);
  EXPECT_EQ(ds_graph_load("/nonexistent/graph.json", &g), DS_ERR_IO);
  EXPECT_EQ(ds_graph_build_from_log(nullptr, "t", "", 3000, &g), DS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ds_graph_build_from_log(log.c_str(), "task1", "", 3000, nullptr), DS_ERR_INVALID_ARGUMENT);

  g = fig3();
  char* out = nullptr;
  EXPECT_EQ(ds_match(g, "{\"spec\": {}, \"M\": 0}", &out), DS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(out, nullptr);
  EXPECT_EQ(ds_graph_upvote(g, "abc"), DS_ERR_UNKNOWN_NODE);
  ds_dataset* d = nullptr;
  EXPECT_EQ(ds_dataset_parse("time\nx\n", dstest::read_fixture("earthquakes.schema.json").c_str(), &d),
            DS_ERR_SCHEMA_MISMATCH);
  // successful calls leave the error slot empty
  EXPECT_EQ(ds_graph_stats(g, &out), DS_OK);
  ds_string_free(out);
  EXPECT_STREQ(ds_last_error_message(), "");
  ds_graph_free(g);
  ds_graph_free(nullptr);
  ds_dataset_free(nullptr);
}

TEST(CApi, SaveLoadUpvote) {
  ds_graph* g = fig3();
  char* json = nullptr;
  ASSERT_EQ(ds_graph_to_json(g, &json), DS_OK);
  auto doc = Json::parse(json);
  ds_string_free(json);
  std::string id = doc["nodes"][0]["nodeId"];
  ASSERT_EQ(ds_graph_upvote(g, id.c_str()), DS_OK);
  auto path = (std::filesystem::temp_directory_path() / "dataslicer_c_api_test.json").string();
  ASSERT_EQ(ds_graph_save(g, path.c_str()), DS_OK);
  ds_graph* back = nullptr;
  ASSERT_EQ(ds_graph_load(path.c_str(), &back), DS_OK);
  ASSERT_EQ(ds_graph_to_json(back, &json), DS_OK);
  EXPECT_EQ(Json::parse(take(json))["nodes"][0]["votes"], 1);
  std::remove(path.c_str());
  ds_graph_free(back);
  ds_graph_free(g);
}

TEST(CApi, ErrorSlotIsPerThread) {
  ds_graph* g = nullptr;
  EXPECT_EQ(ds_graph_parse("{", &g), DS_ERR_FORMAT);
  std::string other;
  std::thread([&] { other = ds_last_error_message(); }).join();
  EXPECT_EQ(other, "");
  EXPECT_STRNE(ds_last_error_message(), "");
}

TEST(CApi, Server) {
  ds_graph* g = fig3();
  ds_dataset* d = quakes();
  ds_server* s = nullptr;
  ASSERT_EQ(ds_server_create(g, nullptr, d, &s), DS_OK) << ds_last_error_message();
  int port = 0;
  ASSERT_EQ(ds_server_bind(s, "127.0.0.1", 0, &port), DS_OK) << ds_last_error_message();
  ASSERT_GT(port, 0);
  std::thread t([s] { ds_server_listen(s); });
  httplib::Client c("127.0.0.1", port);
  auto r = c.Post("/graphs/task1/recommend", fig1b_request(2), "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200) << r->body;
  EXPECT_TRUE(Json::parse(r->body)["recommendations"][0]["sqlTemplate"].is_string());
  r = c.Post("/datasets/Earthquakes/evaluate", fig1b_request(1), "application/json");
  EXPECT_EQ(r->status, 200);
  ds_server_stop(s);
  t.join();
  ds_server_free(s);
  ds_dataset_free(d);
  ds_graph_free(g);
}

}  // namespace
