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

#include "entlink/cli.h"

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "entlink/error.h"
#include "entlink/pipeline.h"
#include "entlink/service.h"

namespace entlink {
namespace {

struct CommonOptions {
  std::string kg_path;
  std::string lexicon_path;
  std::string log_path;
  bool json = false;
  double tau = 0.25;
  size_t k = 3;
};

void AddGraphOptions(CLI::App *cmd, CommonOptions *opts) {
  cmd->add_option("--kg", opts->kg_path, "Knowledge graph JSON file")
      ->envname("ISABEL_KG");
  cmd->add_option("--lexicon", opts->lexicon_path,
                  "Lexicon JSON file (default: built-in English)");
}

void AddRunOptions(CLI::App *cmd, CommonOptions *opts) {
  AddGraphOptions(cmd, opts);
  cmd->add_option("--log", opts->log_path, "Append interactions to this JSONL file");
  cmd->add_option("--tau", opts->tau, "Similarity threshold")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--k", opts->k, "Candidates per sub-sentence")
      ->check(CLI::PositiveNumber);
}

void PrintPretty(const PipelineResult &r, std::ostream &out) {
  out << "input: " << r.input_text << "\n";
  out << "entities:\n";
  for (const auto &span : r.entity_spans) {
    std::string text;
    for (size_t i = span.range.begin; i < span.range.end; ++i) {
      if (!text.empty()) text += ' ';
      text += r.tokens[i].surface;
    }
    out << "  " << span.entity_type << " \"" << text << "\" ("
        << SpanSourceName(span.source) << ": " << span.matched_rule << ")\n";
  }
  if (!r.oov_rejections.empty()) {
    out << "out of vocabulary:";
    for (const auto &rej : r.oov_rejections) out << " " << rej.rejected_word;
    out << "\n";
  }
  for (size_t i = 0; i < r.subsentences.size(); ++i) {
    out << "sub-sentence " << i << ": \"" << r.subsentences[i].rendered << "\"";
    const LinkedEntity *link = nullptr;
    for (const auto &l : r.linked_entities) {
      if (l.subsentence_index == i) link = &l;
    }
    if (link != nullptr) {
      char score[32];
      std::snprintf(score, sizeof(score), "%.4f", link->score);
      out << " -> " << link->entity_id << " (" << score << ")";
    } else {
      out << " -> no link";
    }
    out << "\n";
  }
  if (!r.assembly) {
    out << "packages: none (no understood entities)\n";
  } else if (r.assembly->matched_packages.empty()) {
    out << "packages: none cover the request\n";
    for (const auto &row : r.assembly->diagnostics) {
      out << "  " << row.package_id << " covers " << row.matched << ", missing";
      for (const auto &id : row.missing) out << " " << id;
      out << "\n";
    }
  } else {
    out << "packages:\n";
    for (const auto &p : r.assembly->matched_packages) {
      out << "  " << p.display_name << " (" << p.id << "):";
      for (const auto &m : p.members) out << " " << m;
      out << "\n";
    }
  }
  for (const auto &d : r.diagnostics) out << "note: " << d << "\n";
  out << "timings:";
  for (const auto &t : r.timings) {
    char ms[32];
    std::snprintf(ms, sizeof(ms), "%.3f",
                  std::chrono::duration<double, std::milli>(t.elapsed).count());
    out << " " << t.stage << "=" << ms << "ms";
  }
  out << "\n";
}

// Returns nullptr after printing the error.
std::shared_ptr<const Snapshot> Load(const CommonOptions &opts,
                                     const char *command, std::ostream &err) {
  if (opts.kg_path.empty()) {
    err << command << ": no knowledge graph (use --kg or ISABEL_KG)\n";
    return nullptr;
  }
  try {
    return LoadSnapshot(opts.kg_path, opts.lexicon_path);
  } catch (const std::exception &e) {
    err << command << ": load: " << e.what() << "\n";
    return nullptr;
  }
}

// Runs one query. Returns an exit code.
int LinkOnce(const std::string &text, const PipelineConfig &config,
             InteractionLog *log, bool json, std::ostream &out,
             std::ostream &err) {
  try {
    PipelineResult result = RunAndRecord(text, config, log);
    if (json) {
      out << ResultJsonText(result);
    } else {
      PrintPretty(result, out);
    }
    return kExitOk;
  } catch (const InputTooLong &e) {
    err << "input: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvalidEncoding &e) {
    err << "input: " << e.what() << "\n";
    return kExitInputError;
  } catch (const StageError &e) {
    err << "stage " << e.what() << "\n";
    return kExitLoadError;
  }
}

int CmdLink(const CommonOptions &opts, const std::string &text,
            std::ostream &out, std::ostream &err) {
  auto snapshot = Load(opts, "link", err);
  if (!snapshot) return kExitLoadError;
  std::unique_ptr<InteractionLog> log;
  if (!opts.log_path.empty()) log = std::make_unique<InteractionLog>(opts.log_path);
  PipelineConfig config{snapshot, opts.tau, opts.k};
  return LinkOnce(text, config, log.get(), opts.json, out, err);
}

int CmdRepl(const CommonOptions &opts, std::istream &in, std::ostream &out,
            std::ostream &err) {
  auto snapshot = Load(opts, "repl", err);
  if (!snapshot) return kExitLoadError;
  std::unique_ptr<InteractionLog> log;
  if (!opts.log_path.empty()) log = std::make_unique<InteractionLog>(opts.log_path);
  PipelineConfig config{snapshot, opts.tau, opts.k};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    LinkOnce(line, config, log.get(), opts.json, out, err);
    out.flush();
  }
  return kExitOk;
}

int CmdValidate(const CommonOptions &opts, std::ostream &out,
                std::ostream &err) {
  auto snapshot = Load(opts, "validate-kg", err);
  if (!snapshot) return kExitLoadError;
  ValidationReport report = ValidateKg(snapshot->kg, snapshot->lexicon);
  if (opts.json) {
    out << ValidationReportToJson(report).dump(2) << "\n";
  } else if (report.empty()) {
    out << "ok: " << snapshot->kg.entities.size() << " entities, "
        << snapshot->kg.packages.size() << " packages, no findings\n";
  } else {
    for (const auto &f : report) {
      out << FindingKindName(f.kind) << " " << f.subject << ": " << f.detail
          << "\n";
    }
  }
  return report.empty() ? kExitOk : kExitFindings;
}

}  // namespace

int RunCli(int argc, const char *const *argv, std::istream &in,
           std::ostream &out, std::ostream &err) {
  CLI::App app{"Entity-linking search over a package knowledge graph",
               "entlink"};
  app.require_subcommand(1);

  CommonOptions link_opts;
  std::string text;
  auto *link = app.add_subcommand("link", "Link one request and print the result");
  AddRunOptions(link, &link_opts);
  link->add_flag("--json", link_opts.json, "Print the result as JSON");
  link->add_option("text", text, "Request text")->required();

  CommonOptions repl_opts;
  auto *repl = app.add_subcommand("repl", "Link each line read from stdin");
  AddRunOptions(repl, &repl_opts);
  repl->add_flag("--json", repl_opts.json, "Print results as JSON");

  CommonOptions serve_opts;
  ServiceConfig service;
  auto *serve = app.add_subcommand("serve", "Run the HTTP service");
  AddRunOptions(serve, &serve_opts);
  serve->add_option("--port", service.port, "Listen port")
      ->envname("ISABEL_PORT");
  serve->add_option("--host", service.host, "Listen address");

  CommonOptions validate_opts;
  auto *validate = app.add_subcommand("validate-kg", "Check a knowledge graph");
  AddGraphOptions(validate, &validate_opts);
  validate->add_flag("--json", validate_opts.json, "Print findings as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (*link) return CmdLink(link_opts, text, out, err);
  if (*repl) return CmdRepl(repl_opts, in, out, err);
  if (*validate) return CmdValidate(validate_opts, out, err);
  service.kg_path = serve_opts.kg_path;
  service.lexicon_path = serve_opts.lexicon_path;
  service.log_path = serve_opts.log_path;
  service.tau = serve_opts.tau;
  service.k = serve_opts.k;
  return Serve(service, err);
}

}  // namespace entlink
