// Copyright 2026 The Clipnest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "clipnest/http_server.h"

#define CPPHTTPLIB_LISTEN_BACKLOG 128
#include "httplib.h"

#include "clipnest/stats.h"

namespace clipnest {

namespace {

constexpr char kJsonType[] = "application/json";

void SendJson(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(CanonicalDump(body), kJsonType);
}

void SendError(httplib::Response& res, const Error& error) {
  if (error.current_revision()) {
    res.set_header(kRevisionHeader, std::to_string(*error.current_revision()));
  }
  SendJson(res, ErrorToJson(error), HttpStatusFor(error.code()));
}

void SetRevision(httplib::Response& res, std::int64_t revision) {
  res.set_header(kRevisionHeader, std::to_string(revision));
}

std::optional<std::string> Query(const httplib::Request& req,
                                 const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

ProjectId PathProject(const httplib::Request& req) {
  return ProjectId(req.path_params.at("id"));
}

// Wraps a handler so every Error becomes a JSON error response.
httplib::Server::Handler Guarded(
    std::function<void(const httplib::Request&, httplib::Response&)> fn) {
  return [fn = std::move(fn)](const httplib::Request& req,
                              httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      SendError(res, e);
    } catch (const Json::exception& e) {
      SendError(res, Error(ErrorCode::kSchemaInvalid, e.what()));
    }
  };
}

}  // namespace

struct HttpServer::Impl {
  explicit Impl(Service& s) : service(s) {}

  void Routes();

  Service& service;
  httplib::Server server;
  std::thread thread;
};

void HttpServer::Impl::Routes() {
  Service& svc = service;

  server.Get("/projects", Guarded([&svc](const auto&, auto& res) {
               SendJson(res, svc.ProjectsJson());
             }));

  server.Post("/projects", Guarded([&svc](const auto& req, auto& res) {
                const Json body = ParseJson(req.body);
                const std::string name = WithSchemaErrors(
                    "create project",
                    [&] { return body.at("name").template get<std::string>(); });
                ProjectInfo info = svc.store().CreateProject(name);
                SetRevision(res, 0);
                SendJson(res, ProjectInfoToJson(info), 201);
              }));

  server.Post("/projects/import", Guarded([&svc](const auto& req, auto& res) {
                ProjectInfo info = svc.ImportProject(req.body);
                SetRevision(res, 0);
                SendJson(res, ProjectInfoToJson(info), 201);
              }));

  server.Get("/projects/:id/overview", Guarded([&svc](const auto& req, auto& res) {
               SendJson(res, svc.OverviewJson(PathProject(req)));
             }));

  server.Get("/projects/:id/reader", Guarded([&svc](const auto& req, auto& res) {
               std::optional<CardId> root;
               if (auto r = Query(req, "root")) root = CardId(*r);
               SendJson(res, svc.ReaderJson(PathProject(req), root));
             }));

  server.Get("/projects/:id/export", Guarded([&svc](const auto& req, auto& res) {
               const std::string doc = svc.ExportProject(PathProject(req));
               res.set_header("ETag", "\"" + Sha256Hex(doc) + "\"");
               res.set_content(doc, kJsonType);
             }));

  server.Get("/projects/:id/stats", Guarded([&svc](const auto& req, auto& res) {
               SendJson(res, svc.ProjectStatsJson(PathProject(req)));
             }));

  server.Post("/projects/:id/mutations",
              Guarded([&svc](const auto& req, auto& res) {
                const MutationEnvelope envelope =
                    MutationEnvelope::FromJson(ParseJson(req.body));
                MutationOutcome out =
                    svc.ApplyMutation(PathProject(req), envelope);
                SetRevision(res, out.revision);
                SendJson(res, Json{{"revision", out.revision},
                                   {"result", std::move(out.result)}});
              }));

  server.Post("/projects/:id/capture/:kind",
              Guarded([&svc](const auto& req, auto& res) {
                MutationOutcome out =
                    svc.Capture(PathProject(req), req.path_params.at("kind"),
                                ParseJson(req.body));
                SetRevision(res, out.revision);
                Json body = std::move(out.result);
                body["revision"] = out.revision;
                SendJson(res, body, 201);
              }));

  server.Get("/cards/:id/peek", Guarded([&svc](const auto& req, auto& res) {
               std::optional<ProjectId> project;
               if (auto p = Query(req, "project")) project = ProjectId(*p);
               SendJson(res, svc.PeekJson(CardId(req.path_params.at("id")),
                                          project));
             }));

  server.Post("/assets", Guarded([&svc](const auto& req, auto& res) {
                const AssetInfo info = svc.assets().Put(
                    req.body, req.get_header_value("Content-Type"));
                SendJson(res,
                         Json{{"hash", info.hash},
                              {"media_type", info.media_type},
                              {"byte_length", info.byte_length}},
                         201);
              }));

  server.Get("/assets/:hash", Guarded([&svc](const auto& req, auto& res) {
               AssetStore::Blob blob = svc.assets().Get(req.path_params.at("hash"));
               res.set_header("ETag", "\"" + req.path_params.at("hash") + "\"");
               res.set_content(std::move(blob.bytes), blob.media_type);
             }));

  server.Get("/corpus/report", Guarded([&svc](const auto& req, auto& res) {
               const std::string format = Query(req, "format").value_or("json");
               if (format == "json") {
                 SendJson(res, svc.CorpusReportJson());
                 return;
               }
               std::vector<ProjectStats> stats;
               for (const ProjectListing& p : svc.store().ListProjects()) {
                 stats.push_back(
                     ComputeProjectStats(*svc.store().Snapshot(p.info.id)));
               }
               const CorpusReport report = ComputeCorpusReport(stats);
               if (format == "csv") {
                 res.set_content(AnnotationLengthCsv(report), "text/csv");
               } else if (format == "table") {
                 res.set_content(AnnotationLengthTable(report), "text/plain");
               } else {
                 throw Error(ErrorCode::kInvalidArgument,
                             "format must be json, csv or table");
               }
             }));

  server.set_error_handler([](const auto&, auto& res) {
    if (!res.body.empty()) return;
    if (res.status == 404) {
      SendJson(res, Json{{"error", "NotFound"}, {"message", "no such route"}},
               404);
    }
  });
}

HttpServer::HttpServer(Service& service)
    : impl_(std::make_unique<Impl>(service)) {
  impl_->Routes();
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::kIoError, "cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIoError,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::Run() { impl_->server.listen_after_bind(); }

int HttpServer::Start(const std::string& host, int port) {
  const int bound = Bind(host, port);
  impl_->thread = std::thread([this] { Run(); });
  impl_->server.wait_until_ready();
  return bound;
}

void HttpServer::Stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace clipnest
