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

// Loopback HTTP/JSON front end over a Service.
//
//   GET  /projects                          list
//   POST /projects                          {"name"} -> 201
//   POST /projects/import                   snapshot document -> 201
//   GET  /projects/{id}/overview
//   GET  /projects/{id}/reader[?root=]
//   GET  /projects/{id}/export              ETag: sha256 of the body
//   GET  /projects/{id}/stats
//   POST /projects/{id}/mutations           envelope -> 200 | 409
//   POST /projects/{id}/capture/{kind}      -> 201
//   GET  /cards/{id}/peek[?project=]
//   POST /assets                            body, Content-Type -> 201
//   GET  /assets/{hash}
//   GET  /corpus/report[?format=csv|table]
//
// Every mutating response carries X-Clipnest-Revision. Errors are
// {"error","message"[,"current_revision"]}.

#ifndef CLIPNEST_HTTP_SERVER_H_
#define CLIPNEST_HTTP_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "clipnest/service.h"

namespace clipnest {

inline constexpr char kRevisionHeader[] = "X-Clipnest-Revision";

class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds `host`:`port` (0 picks a free port) and returns the bound port.
  // Throws kIoError when binding fails.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); blocks.
  void Run();
  // Bind + Run on a background thread.
  int Start(const std::string& host = "127.0.0.1", int port = 0);
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace clipnest

#endif  // CLIPNEST_HTTP_SERVER_H_
