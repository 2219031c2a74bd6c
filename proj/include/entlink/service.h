// Copyright 2026 The entlink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTLINK_SERVICE_H_
#define ENTLINK_SERVICE_H_

#include <memory>
#include <mutex>
#include <ostream>
#include <string>

#include "entlink/kg.h"
#include "entlink/pipeline.h"

namespace httplib {
class Server;
}

namespace entlink {

struct ServiceConfig {
  std::string kg_path;
  std::string lexicon_path;  // empty: built-in English lexicon
  std::string log_path;      // empty: no interaction log
  std::string host = "127.0.0.1";
  int port = 8080;
  double tau = 0.25;
  size_t k = 3;

  // Throws std::invalid_argument for unreadable paths, bad port, tau or k.
  void Check() const;
};

// Loads the lexicon (or the built-in one) and the graph, and fits the
// derived indexes. Throws Error subclasses on failure.
std::shared_ptr<const Snapshot> LoadSnapshot(const std::string &kg_path,
                                             const std::string &lexicon_path);

struct HttpReply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
  std::string server_timing;  // Server-Timing header value, may be empty
};

// HTTP front end over a swappable snapshot. Requests take a reference to the
// current snapshot when they start and finish on it even if a reload swaps a
// new one in meanwhile.
//
//   POST /v1/link     {"text": "..."} -> pipeline result
//   GET  /v1/packages -> package list
//   GET  /v1/health   -> 200 once a graph is loaded, 503 before
//   POST /v1/reload   -> re-reads kg_path / lexicon_path
class Service {
 public:
  explicit Service(ServiceConfig config);

  // Loads from the configured paths and swaps the result in. The current
  // snapshot stays in place when loading throws.
  ValidationReport Reload();

  void Install(std::shared_ptr<const Snapshot> snapshot);
  std::shared_ptr<const Snapshot> snapshot() const;

  HttpReply HandleLink(const std::string &body);
  HttpReply HandlePackages() const;
  HttpReply HandleHealth() const;
  HttpReply HandleReload();

  void RegisterRoutes(httplib::Server &server);

  const ServiceConfig &config() const { return config_; }

 private:
  ServiceConfig config_;
  std::unique_ptr<InteractionLog> log_;
  mutable std::mutex snapshot_mu_;
  std::shared_ptr<const Snapshot> snapshot_;
  std::mutex reload_mu_;
};

// Runs the HTTP service until SIGINT/SIGTERM. SIGHUP triggers a reload.
// Returns the process exit code (2 on startup failure).
int Serve(const ServiceConfig &config, std::ostream &err);

}  // namespace entlink

#endif  // ENTLINK_SERVICE_H_
