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

// dataslicer command line. Talks to the engine only through the C API.

#include <pthread.h>

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dataslicer.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

using Json = nlohmann::json;

// A failed C call; the engine's error is already recorded.
struct CallFailed {};

void check(ds_status status) {
  if (status != DS_OK) throw CallFailed{};
}

std::string take(char* s) {
  std::string out(s);
  ds_string_free(s);
  return out;
}

struct GraphHandle {
  ds_graph* p = nullptr;
  ~GraphHandle() { ds_graph_free(p); }
};

struct DatasetHandle {
  ds_dataset* p = nullptr;
  ~DatasetHandle() { ds_dataset_free(p); }
};

struct UsageError {
  std::string message;
};

// Input files the CLI reads itself; reported like library errors.
struct InputError {
  std::string code;
  std::string message;
  std::string path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"IoError", "cannot read '" + path + "'", path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The spec file holds a spec document; requests wrap it as {"spec": ...}.
Json request_for(const std::string& spec_path) {
  Json spec = Json::parse(read_file(spec_path), nullptr, false);
  if (spec.is_discarded()) throw InputError{"FormatError", "'" + spec_path + "' is not valid JSON", spec_path};
  return Json{{"spec", std::move(spec)}};
}

std::optional<double> env_threshold() {
  const char* text = std::getenv("DATASLICER_T");
  if (!text || !*text) return std::nullopt;
  char* end = nullptr;
  double t = std::strtod(text, &end);
  if (*end != '\0' || !(t >= 0)) throw UsageError{"DATASLICER_T must be a nonnegative number"};
  return t;
}

void load_dataset(const std::string& data, const std::string& schema, DatasetHandle& out) {
  if (data.empty() != schema.empty()) throw UsageError{"--data and --schema go together"};
  if (!data.empty()) check(ds_dataset_load(data.c_str(), schema.c_str(), &out.p));
}

void emit(const std::string& json) {
  std::fwrite(json.data(), 1, json.size(), stdout);
  std::fputc('\n', stdout);
  std::fflush(stdout);
}

int serve(const std::string& host, int port, const std::string& graph_path, const std::string& data,
          const std::string& schema) {
  GraphHandle graph;
  check(ds_graph_load(graph_path.c_str(), &graph.p));
  DatasetHandle dataset;
  load_dataset(data, schema, dataset);

  // Block the stop signals here so the waiter thread receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  ds_server* server = nullptr;
  check(ds_server_create(graph.p, graph_path.c_str(), dataset.p, &server));
  int bound = 0;
  if (ds_server_bind(server, host.c_str(), port, &bound) != DS_OK) {
    ds_server_free(server);
    throw CallFailed{};
  }
  emit(Json{{"host", host}, {"port", bound}}.dump());
  std::cerr << "serving on http://" << host << ":" << bound << "\n";

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    ds_server_stop(server);
  });
  ds_status status = ds_server_listen(server);
  // listen() also returns on its own failure; wake the waiter either way.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  ds_server_free(server);
  check(status);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DataSlicer: task-aware data slice recommendations", "dataslicer"};
  app.require_subcommand(1);

  std::string log_path, task, out_path, graph_path, spec_path, data_path, schema_path, dataset_name;
  std::string host = "127.0.0.1";
  std::size_t max_results = 3;
  double threshold = -1;
  int port = 8080;
  bool sql_only = false;

  auto* build = app.add_subcommand("build-graph", "Build a data-slice graph from a session log");
  build->add_option("--log", log_path, "Session log (one JSON event per line)")->required();
  build->add_option("--task", task, "Task type")->required();
  build->add_option("--out", out_path, "Graph file to write")->required();
  build->add_option("--dataset", dataset_name, "Dataset name recorded in the graph");

  auto* match = app.add_subcommand("match", "Match a spec to graph nodes");
  match->add_option("--graph", graph_path)->required();
  match->add_option("--spec", spec_path)->required();
  match->add_option("-M", max_results, "Maximum nodes")->check(CLI::PositiveNumber);

  auto* recommend = app.add_subcommand("recommend", "Recommend data slices for a spec");
  recommend->add_option("--graph", graph_path)->required();
  recommend->add_option("--spec", spec_path)->required();
  recommend->add_option("--data", data_path, "CSV file");
  recommend->add_option("--schema", schema_path, "Schema JSON");
  recommend->add_option("-M", max_results, "Maximum recommendations")->check(CLI::NonNegativeNumber);
  auto* t_opt = recommend->add_option("-T", threshold, "Interestingness threshold in ms")->check(
      CLI::NonNegativeNumber);

  auto* eval = app.add_subcommand("eval", "Evaluate a spec against a dataset");
  eval->add_option("--data", data_path)->required();
  eval->add_option("--schema", schema_path)->required();
  eval->add_option("--spec", spec_path)->required();
  eval->add_flag("--sql-only", sql_only, "Print only the SQL template");

  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  serve_cmd->add_option("--port", port, "0 picks a free port")->required()->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--graph", graph_path)->required();
  serve_cmd->add_option("--data", data_path);
  serve_cmd->add_option("--schema", schema_path);

  if (argc <= 1) {
    std::cerr << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) {
      GraphHandle graph;
      check(ds_graph_build_from_log_file(log_path.c_str(), task.c_str(),
                                         dataset_name.empty() ? nullptr : dataset_name.c_str(), -1, &graph.p));
      check(ds_graph_save(graph.p, out_path.c_str()));
      char* stats = nullptr;
      check(ds_graph_stats(graph.p, &stats));
      emit(take(stats));
      std::cerr << "wrote " << out_path << "\n";
    } else if (*match) {
      Json req = request_for(spec_path);
      req["M"] = max_results;
      GraphHandle graph;
      check(ds_graph_load(graph_path.c_str(), &graph.p));
      char* out = nullptr;
      check(ds_match(graph.p, req.dump().c_str(), &out));
      emit(take(out));
    } else if (*recommend) {
      Json req = request_for(spec_path);
      req["M"] = max_results;
      if (t_opt->count() > 0) {
        req["T"] = threshold;
      } else if (auto t = env_threshold()) {
        req["T"] = *t;
      }
      GraphHandle graph;
      check(ds_graph_load(graph_path.c_str(), &graph.p));
      DatasetHandle dataset;
      load_dataset(data_path, schema_path, dataset);
      char* out = nullptr;
      check(ds_recommend(graph.p, dataset.p, req.dump().c_str(), &out));
      emit(take(out));
    } else if (*eval) {
      Json req = request_for(spec_path);
      DatasetHandle dataset;
      check(ds_dataset_load(data_path.c_str(), schema_path.c_str(), &dataset.p));
      char* out = nullptr;
      check(sql_only ? ds_sql_template(dataset.p, req.dump().c_str(), &out)
                     : ds_evaluate(dataset.p, req.dump().c_str(), &out));
      emit(take(out));
    } else if (*serve_cmd) {
      return serve(host, port, graph_path, data_path, schema_path);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << "\n"
              << Json{{"code", e.code}, {"message", e.message}, {"detail", e.path}}.dump() << "\n";
    return kExitData;
  } catch (const CallFailed&) {
    std::cerr << "error: " << ds_last_error_message() << "\n" << ds_last_error_json() << "\n";
    return kExitData;
  }
  return kExitOk;
}
