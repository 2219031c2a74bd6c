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

#include "entlink/service.h"

#include <csignal>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "entlink/error.h"
#include "httplib.h"
#include "json.hpp"

namespace entlink {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

HttpReply ErrorReply(int status, const std::string &message) {
  return {status, ordered_json{{"error", message}}.dump() + "\n",
          "application/json", ""};
}

std::string ServerTiming(const std::vector<StageTiming> &timings) {
  std::string out;
  for (const auto &t : timings) {
    if (!out.empty()) out += ", ";
    char dur[32];
    std::snprintf(dur, sizeof(dur), "%.3f",
                  std::chrono::duration<double, std::milli>(t.elapsed).count());
    out += t.stage + ";dur=" + dur;
  }
  return out;
}

void Respond(const HttpReply &reply, httplib::Response &res) {
  res.status = reply.status;
  if (!reply.server_timing.empty()) {
    res.set_header("Server-Timing", reply.server_timing);
  }
  res.set_content(reply.body, reply.content_type);
}

bool Readable(const std::string &path) {
  std::ifstream in(path);
  return in.good();
}

std::atomic<bool> g_reload_requested{false};
std::atomic<bool> g_stop_requested{false};

extern "C" void OnSignal(int sig) {
  if (sig == SIGHUP) {
    g_reload_requested = true;
  } else {
    g_stop_requested = true;
  }
}

}  // namespace

void ServiceConfig::Check() const {
  if (kg_path.empty()) throw std::invalid_argument("no knowledge graph path");
  if (!Readable(kg_path)) {
    throw std::invalid_argument("cannot read knowledge graph " + kg_path);
  }
  if (!lexicon_path.empty() && !Readable(lexicon_path)) {
    throw std::invalid_argument("cannot read lexicon " + lexicon_path);
  }
  if (port < 1 || port > 65535) {
    throw std::invalid_argument("port must be in [1, 65535]");
  }
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("tau must be in [0, 1]");
  }
  if (k < 1) throw std::invalid_argument("k must be at least 1");
}

std::shared_ptr<const Snapshot> LoadSnapshot(const std::string &kg_path,
                                             const std::string &lexicon_path) {
  LexiconConfig lexicon =
      lexicon_path.empty() ? DefaultLexicon() : LoadLexiconFile(lexicon_path);
  KnowledgeGraph kg = LoadKgFile(kg_path, lexicon);
  return Snapshot::Create(std::move(kg), std::move(lexicon));
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  if (!config_.log_path.empty()) {
    log_ = std::make_unique<InteractionLog>(config_.log_path);
  }
}

ValidationReport Service::Reload() {
  std::lock_guard<std::mutex> lock(reload_mu_);
  auto fresh = LoadSnapshot(config_.kg_path, config_.lexicon_path);
  ValidationReport report = ValidateKg(fresh->kg, fresh->lexicon);
  Install(std::move(fresh));
  return report;
}

void Service::Install(std::shared_ptr<const Snapshot> snapshot) {
  std::lock_guard<std::mutex> lock(snapshot_mu_);
  snapshot_ = std::move(snapshot);
}

std::shared_ptr<const Snapshot> Service::snapshot() const {
  std::lock_guard<std::mutex> lock(snapshot_mu_);
  return snapshot_;
}

HttpReply Service::HandleLink(const std::string &body) {
  auto snap = snapshot();
  if (!snap) return ErrorReply(503, "knowledge graph not loaded");
  if (!IsValidUtf8(body)) return ErrorReply(422, "request is not valid UTF-8");
  json request = json::parse(body, nullptr, false);
  if (request.is_discarded() || !request.is_object() ||
      !request.contains("text") || !request["text"].is_string()) {
    return ErrorReply(400, "expected a JSON object with a string \"text\"");
  }
  std::string text = request["text"].get<std::string>();
  try {
    PipelineConfig config{snap, config_.tau, config_.k};
    PipelineResult result = RunAndRecord(text, config, log_.get());
    return {200, ResultJsonText(result), "application/json",
            ServerTiming(result.timings)};
  } catch (const InputTooLong &err) {
    return ErrorReply(413, err.what());
  } catch (const InvalidEncoding &err) {
    return ErrorReply(422, err.what());
  } catch (const std::exception &err) {
    return ErrorReply(500, err.what());
  }
}

HttpReply Service::HandlePackages() const {
  auto snap = snapshot();
  if (!snap) return ErrorReply(503, "knowledge graph not loaded");
  ordered_json packages = ordered_json::array();
  for (const auto &[id, p] : snap->kg.packages) {
    packages.push_back(
        {{"id", p.id}, {"name", p.display_name}, {"members", p.members}});
  }
  return {200, packages.dump(2) + "\n", "application/json", ""};
}

HttpReply Service::HandleHealth() const {
  auto snap = snapshot();
  if (!snap) {
    return {503, ordered_json{{"status", "loading"}}.dump() + "\n",
            "application/json", ""};
  }
  ordered_json body = {{"status", "ok"},
                       {"entities", snap->kg.entities.size()},
                       {"packages", snap->kg.packages.size()}};
  return {200, body.dump() + "\n", "application/json", ""};
}

HttpReply Service::HandleReload() {
  try {
    ValidationReport report = Reload();
    ordered_json body = {{"status", "reloaded"},
                         {"findings", ValidationReportToJson(report)}};
    return {200, body.dump() + "\n", "application/json", ""};
  } catch (const std::exception &err) {
    return ErrorReply(422, std::string("reload rejected: ") + err.what());
  }
}

void Service::RegisterRoutes(httplib::Server &server) {
  server.Post("/v1/link", [this](const httplib::Request &req,
                                 httplib::Response &res) {
    Respond(HandleLink(req.body), res);
  });
  server.Get("/v1/packages", [this](const httplib::Request &,
                                    httplib::Response &res) {
    Respond(HandlePackages(), res);
  });
  server.Get("/v1/health", [this](const httplib::Request &,
                                  httplib::Response &res) {
    Respond(HandleHealth(), res);
  });
  server.Post("/v1/reload", [this](const httplib::Request &,
                                   httplib::Response &res) {
    Respond(HandleReload(), res);
  });
}

int Serve(const ServiceConfig &config, std::ostream &err) {
  try {
    config.Check();
  } catch (const std::exception &e) {
    err << "serve: " << e.what() << "\n";
    return 2;
  }
  Service service(config);
  try {
    for (const auto &finding : service.Reload()) {
      err << "serve: warning: " << FindingKindName(finding.kind) << " "
          << finding.subject << ": " << finding.detail << "\n";
    }
  } catch (const std::exception &e) {
    err << "serve: load: " << e.what() << "\n";
    return 2;
  }

  httplib::Server server;
  service.RegisterRoutes(server);
  if (!server.bind_to_port(config.host, config.port)) {
    err << "serve: cannot listen on " << config.host << ":" << config.port
        << "\n";
    return 2;
  }

  g_reload_requested = false;
  g_stop_requested = false;
  std::signal(SIGHUP, OnSignal);
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);

  std::atomic<bool> done{false};
  std::thread watcher([&] {
    while (!done) {
      if (g_reload_requested.exchange(false)) {
        try {
          service.Reload();
          err << "serve: reloaded " << config.kg_path << "\n";
        } catch (const std::exception &e) {
          err << "serve: reload rejected: " << e.what() << "\n";
        }
      }
      if (g_stop_requested) {
        server.stop();
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
  });

  err << "serve: listening on " << config.host << ":" << config.port << "\n";
  server.listen_after_bind();
  done = true;
  watcher.join();
  return 0;
}

}  // namespace entlink
