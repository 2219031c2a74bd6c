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

#ifndef ENTLINK_PIPELINE_H_
#define ENTLINK_PIPELINE_H_

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entlink/assembler.h"
#include "entlink/context.h"
#include "entlink/error.h"
#include "entlink/extraction.h"
#include "entlink/kg.h"
#include "entlink/linking.h"
#include "entlink/text.h"
#include "json.hpp"

namespace entlink {

// Request guard, in code points.
inline constexpr size_t kMaxInputLength = 10000;

// Everything derived from one (graph, lexicon) pair. Immutable; shared by
// concurrent requests and replaced as a whole on reload.
struct Snapshot {
  LexiconConfig lexicon;
  KnowledgeGraph kg;
  Gazetteer gazetteer;
  Vectorizer vectorizer;

  // Throws EmptyCorpus for a graph without entities.
  static std::shared_ptr<const Snapshot> Create(KnowledgeGraph kg,
                                                LexiconConfig lexicon);
};

struct PipelineConfig {
  std::shared_ptr<const Snapshot> snapshot;
  double tau = 0.25;
  size_t k = 3;

  // Throws std::invalid_argument unless tau is in [0, 1] and k >= 1.
  void Check() const;
};

struct StageTiming {
  std::string stage;
  std::chrono::nanoseconds elapsed{0};
};

struct PipelineResult {
  std::string input_text;
  std::vector<Token> tokens;
  std::vector<EntitySpan> entity_spans;
  std::vector<OovRejection> oov_rejections;
  std::vector<SubSentence> subsentences;
  std::vector<Candidate> candidates;
  std::vector<LinkedEntity> linked_entities;
  // Empty means no entity was understood (the EmptyLinkSet case).
  std::optional<AssemblyResult> assembly;
  std::vector<std::string> diagnostics;
  std::vector<StageTiming> timings;

  // Equality ignores timings.
  bool operator==(const PipelineResult &other) const;
};

// Raised for a failure inside a pipeline stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string &what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string &stage() const { return stage_; }

 private:
  std::string stage_;
};

// Runs every stage on `text`. Throws InvalidEncoding, InputTooLong, or
// StageError. Stages after an empty intermediate result are skipped.
PipelineResult Run(std::string_view text, const PipelineConfig &config);

// Lists cross-stage reference problems; empty for a well-formed result.
std::vector<std::string> CheckConsistency(const PipelineResult &result);

// Canonical JSON form, shared by the CLI and the HTTP service. Timings are
// not included.
nlohmann::ordered_json ResultToJson(const PipelineResult &result);
std::string ResultJsonText(const PipelineResult &result);

struct InteractionRecord {
  std::chrono::system_clock::time_point timestamp;
  std::string input;
  std::vector<std::string> linked;
  std::vector<std::string> packages;
  std::vector<std::string> oov;
};

InteractionRecord MakeRecord(const PipelineResult &result,
                             std::chrono::system_clock::time_point now);

// {"ts","input","linked","packages","oov"} with ts as ISO-8601 UTC
// milliseconds. No trailing newline.
std::string RecordToJsonLine(const InteractionRecord &record);

// Append-only JSONL file. Each record is written with a single write(2) on an
// O_APPEND descriptor while holding the instance mutex.
class InteractionLog {
 public:
  explicit InteractionLog(std::string path) : path_(std::move(path)) {}

  // Throws SinkUnavailable.
  void Append(const InteractionRecord &record);

  const std::string &path() const { return path_; }

 private:
  std::string path_;
  std::mutex mu_;
};

// Run() followed by an append to `log` when it is non-null. Logging failures
// end up in result.diagnostics instead of propagating.
PipelineResult RunAndRecord(std::string_view text, const PipelineConfig &config,
                            InteractionLog *log);

}  // namespace entlink

#endif  // ENTLINK_PIPELINE_H_
