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

#include "dataslicer/http_server.hpp"

#include <httplib.h>

#include <functional>

#include "dataslicer/api.hpp"
#include "dataslicer/codec.hpp"
#include "dataslicer/error.hpp"

namespace dataslicer {

using Json = nlohmann::json;

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownNode:
    case ErrorCode::kUnknownGraph:
    case ErrorCode::kUnknownDataset:
    case ErrorCode::kUnknownSession:
      return 404;
    case ErrorCode::kTaskMismatch:
      return 409;
    case ErrorCode::kIoError:
    case ErrorCode::kInternal:
      return 500;
    default:
      return 400;
  }
}

struct HttpServer::Impl {
  Engine& engine;
  httplib::Server server;
  int port = -1;

  explicit Impl(Engine& e) : engine(e) { routes(); }

  static constexpr const char* kJson = "application/json";

  // Runs `fn` and writes either its JSON result or the error body.
  static void respond(httplib::Response& res, const std::function<Json()>& fn, int ok_status = 200) {
    try {
      Json body = fn();
      res.status = ok_status;
      res.set_content(body.dump(), kJson);
    } catch (const Error& e) {
      res.status = http_status_for(e.code());
      res.set_content(api::error_body(e).dump(), kJson);
    } catch (const Json::exception& e) {
      res.status = 400;
      res.set_content(api::error_body(e).dump(), kJson);
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(api::error_body(e).dump(), kJson);
    }
  }

  static Json body_json(const httplib::Request& req) {
    return req.body.empty() ? Json::object() : codec::parse_json(req.body, "request body");
  }

  void routes() {
    server.Post("/datasets", [this](const httplib::Request& req, httplib::Response& res) {
      respond(
          res,
          [&] {
            if (req.is_multipart_form_data()) {
              if (!req.has_file("csv") || !req.has_file("schema")) {
                throw Error(ErrorCode::kFormatError, "request: multipart needs 'csv' and 'schema' parts", "/");
              }
              std::string name = req.has_file("name") ? req.get_file_value("name").content : std::string();
              return engine.add_dataset(req.get_file_value("csv").content,
                                        codec::parse_json(req.get_file_value("schema").content, "schema"), name);
            }
            Json body = body_json(req);
            if (!body.is_object() || !body.contains("csv") || !body["csv"].is_string() || !body.contains("schema")) {
              throw Error(ErrorCode::kFormatError, "request: expected {csv, schema, name?}", "/");
            }
            std::string name = body.value("name", std::string());
            return engine.add_dataset(body["csv"].get<std::string>(), body["schema"], name);
          },
          201);
    });
    server.Post(R"(/graphs/([^/]+)/sequences)", [this](const httplib::Request& req, httplib::Response& res) {
      respond(res, [&] { return engine.ingest(req.matches[1], req.body); });
    });
    server.Get(R"(/graphs/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      respond(res, [&] { return engine.graph_document(req.matches[1]); });
    });
    server.Post(R"(/graphs/([^/]+)/match)", [this](const httplib::Request& req, httplib::Response& res) {
      respond(res, [&] { return engine.match(req.matches[1], body_json(req)); });
    });
    server.Post(R"(/graphs/([^/]+)/recommend)", [this](const httplib::Request& req, httplib::Response& res) {
      respond(res, [&] { return engine.recommend(req.matches[1], body_json(req)); });
    });
    server.Post(R"(/graphs/([^/]+)/nodes/([^/]+)/upvote)", [this](const httplib::Request& req,
                                                                   httplib::Response& res) {
      respond(res, [&] { return engine.upvote(req.matches[1], req.matches[2]); });
    });
    server.Post(R"(/datasets/([^/]+)/evaluate)", [this](const httplib::Request& req, httplib::Response& res) {
      respond(res, [&] { return engine.evaluate(req.matches[1], body_json(req)); });
    });
    server.Post("/sessions/events", [this](const httplib::Request& req, httplib::Response& res) {
      respond(res, [&] { return engine.record_event(body_json(req)); }, 201);
    });
    server.Get(R"(/sessions/([^/]+)/log)", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        res.set_content(engine.session_log(req.matches[1]), "application/x-ndjson");
      } catch (const Error& e) {
        res.status = http_status_for(e.code());
        res.set_content(api::error_body(e).dump(), kJson);
      }
    });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      Json body{{"code", res.status == 404 ? "NotFound" : "HttpError"},
                {"message", httplib::status_message(res.status)},
                {"detail", ""}};
      res.set_content(body.dump(), kJson);
    });
  }
};

HttpServer::HttpServer(Engine& engine) : impl_(std::make_unique<Impl>(engine)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port(host);
  } else {
    impl_->port = impl_->server.bind_to_port(host, port) ? port : -1;
  }
  if (impl_->port < 0) {
    throw Error(ErrorCode::kIoError, "cannot bind " + host + ":" + std::to_string(port));
  }
  return impl_->port;
}

void HttpServer::listen() {
  if (impl_->port < 0) throw Error(ErrorCode::kInternal, "listen() before bind()");
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace dataslicer
