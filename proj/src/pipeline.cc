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

#include "entlink/pipeline.h"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <ctime>
#include <map>
#include <set>
#include <stdexcept>

namespace entlink {
namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Times `fn` and attributes library errors to `stage`.
template <typename Fn>
auto Timed(const char *stage, PipelineResult *result, Fn &&fn) {
  auto start = Clock::now();
  auto record = [&] {
    result->timings.push_back(
        {stage, std::chrono::duration_cast<std::chrono::nanoseconds>(
                    Clock::now() - start)});
  };
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record();
    } else {
      auto value = fn();
      record();
      return value;
    }
  } catch (const StageError &) {
    throw;
  } catch (const Error &err) {
    throw StageError(stage, err.what());
  }
}

ordered_json SpanJson(const EntitySpan &span) {
  return {{"start", span.range.begin},
          {"end", span.range.end},
          {"entity_type", span.entity_type},
          {"source", SpanSourceName(span.source)},
          {"rule", span.matched_rule}};
}

std::string FormatTimestamp(std::chrono::system_clock::time_point tp) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                tp.time_since_epoch())
                .count();
  std::time_t seconds = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&seconds, &tm);
  char buf[40];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof(out), "%s.%03dZ", buf,
                static_cast<int>(ms % 1000));
  return out;
}

}  // namespace

std::shared_ptr<const Snapshot> Snapshot::Create(KnowledgeGraph kg,
                                                 LexiconConfig lexicon) {
  auto snapshot = std::make_shared<Snapshot>();
  snapshot->vectorizer = Vectorizer::Fit(kg, lexicon);
  snapshot->gazetteer = Gazetteer(kg, lexicon);
  snapshot->kg = std::move(kg);
  snapshot->lexicon = std::move(lexicon);
  return snapshot;
}

void PipelineConfig::Check() const {
  if (!snapshot) throw std::invalid_argument("pipeline has no knowledge graph");
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("tau must be in [0, 1]");
  }
  if (k < 1) throw std::invalid_argument("k must be at least 1");
}

bool PipelineResult::operator==(const PipelineResult &other) const {
  return input_text == other.input_text && tokens == other.tokens &&
         entity_spans == other.entity_spans &&
         oov_rejections == other.oov_rejections &&
         subsentences == other.subsentences &&
         candidates == other.candidates &&
         linked_entities == other.linked_entities &&
         assembly == other.assembly && diagnostics == other.diagnostics;
}

PipelineResult Run(std::string_view text, const PipelineConfig &config) {
  config.Check();
  if (!IsValidUtf8(text)) throw InvalidEncoding();
  size_t length = CodePointCount(text);
  if (length > kMaxInputLength) throw InputTooLong(length, kMaxInputLength);

  const Snapshot &snap = *config.snapshot;
  PipelineResult result;
  result.input_text = std::string(text);

  result.tokens = Timed("tokenize", &result,
                        [&] { return Analyze(text, snap.lexicon); });
  if (result.tokens.empty()) return result;

  result.entity_spans = Timed("extract", &result, [&] {
    return ExtractEntities(result.tokens, snap.kg, snap.gazetteer);
  });
  if (result.entity_spans.empty()) return result;

  OovResult oov = Timed("oov", &result, [&] {
    return FilterOov(result.entity_spans, result.tokens, snap.kg, snap.lexicon);
  });
  result.oov_rejections = std::move(oov.rejected);
  if (oov.kept.empty()) return result;

  result.subsentences = Timed("context", &result, [&] {
    return BuildSubsentences(result.tokens, oov.kept, snap.lexicon);
  });

  Timed("link", &result, [&] {
    LinkOptions options{config.tau, config.k, true};
    for (size_t i = 0; i < result.subsentences.size(); ++i) {
      Disambiguation d = Disambiguate(result.subsentences[i], i, result.tokens,
                                      snap.kg, snap.vectorizer, options);
      result.candidates.insert(result.candidates.end(), d.candidates.begin(),
                               d.candidates.end());
      if (d.best) result.linked_entities.push_back(*d.best);
    }
  });
  if (result.linked_entities.empty()) return result;

  // Two different entities of one type cannot both be satisfied by a package.
  std::map<std::string, std::set<std::string>> by_type;
  for (const LinkedEntity &link : result.linked_entities) {
    by_type[snap.kg.entities.at(link.entity_id).entity_type].insert(
        link.entity_id);
  }
  for (const auto &[type, ids] : by_type) {
    if (ids.size() < 2) continue;
    std::string message = "conflict: " + type + " linked to ";
    bool first = true;
    for (const auto &id : ids) {
      message += (first ? "" : ", ") + id;
      first = false;
    }
    result.diagnostics.push_back(std::move(message));
  }

  result.assembly = Timed("assemble", &result, [&] {
    return Assemble(snap.kg, result.linked_entities);
  });
  return result;
}

std::vector<std::string> CheckConsistency(const PipelineResult &result) {
  std::vector<std::string> problems;
  auto problem = [&](std::string what) { problems.push_back(std::move(what)); };
  const size_t n = result.tokens.size();

  for (size_t i = 1; i < n; ++i) {
    if (result.tokens[i].span.start < result.tokens[i - 1].span.end) {
      problem("token " + std::to_string(i) + " overlaps its predecessor");
    }
  }
  for (size_t i = 0; i < result.entity_spans.size(); ++i) {
    const TokenRange &r = result.entity_spans[i].range;
    if (!(r.begin < r.end && r.end <= n)) {
      problem("entity span " + std::to_string(i) + " is out of range");
    }
    if (i > 0 && result.entity_spans[i - 1].range.Overlaps(r)) {
      problem("entity span " + std::to_string(i) + " overlaps another span");
    }
  }
  auto find_span = [&](const TokenRange &r) {
    for (const auto &span : result.entity_spans) {
      if (span.range == r) return true;
    }
    return false;
  };
  std::set<size_t> rejected_starts;
  for (const auto &rej : result.oov_rejections) {
    if (!find_span(rej.range)) problem("OOV rejection references no span");
    rejected_starts.insert(rej.range.begin);
  }
  if (result.subsentences.size() + result.oov_rejections.size() !=
      result.entity_spans.size()) {
    problem("sub-sentences and rejections do not partition the spans");
  }
  std::set<size_t> anchor_tokens;
  for (const auto &sub : result.subsentences) {
    if (!find_span(sub.anchor.range)) problem("sub-sentence anchor is no span");
    if (rejected_starts.count(sub.anchor.range.begin)) {
      problem("sub-sentence anchored on a rejected span");
    }
    for (size_t i = sub.anchor.range.begin; i < sub.anchor.range.end; ++i) {
      anchor_tokens.insert(i);
    }
  }
  for (const auto &sub : result.subsentences) {
    for (size_t i : sub.context_token_indices) {
      if (i >= n) problem("context index out of range");
      if (anchor_tokens.count(i)) problem("context includes an anchor token");
    }
    if (sub.rendered.empty()) problem("empty rendered sub-sentence");
  }
  for (const auto &c : result.candidates) {
    if (c.subsentence_index >= result.subsentences.size()) {
      problem("candidate references a missing sub-sentence");
    }
  }
  for (const auto &link : result.linked_entities) {
    bool found = false;
    for (const auto &c : result.candidates) {
      if (c.subsentence_index == link.subsentence_index) {
        found = c.entity_id == link.entity_id && c.score == link.score;
        break;  // the first candidate of a sub-sentence is its best
      }
    }
    if (!found) problem("linked entity " + link.entity_id + " is not a best pick");
  }
  if (result.linked_entities.empty() != !result.assembly.has_value()) {
    problem("assembly presence does not match linked entities");
  }
  if (result.assembly) {
    std::set<std::string> required;
    for (const auto &link : result.linked_entities) required.insert(link.entity_id);
    if (required != result.assembly->required) {
      problem("assembly required set differs from linked entities");
    }
    for (const auto &p : result.assembly->matched_packages) {
      std::set<std::string> members(p.members.begin(), p.members.end());
      if (!std::includes(members.begin(), members.end(), required.begin(),
                         required.end())) {
        problem("package " + p.id + " does not cover the linked entities");
      }
    }
  }
  return problems;
}

ordered_json ResultToJson(const PipelineResult &result) {
  ordered_json tokens = ordered_json::array();
  for (const Token &t : result.tokens) {
    tokens.push_back({{"surface", t.surface},
                      {"normalized", t.normalized},
                      {"lemma", t.lemma},
                      {"start", t.span.start},
                      {"end", t.span.end},
                      {"kind", TokenKindName(t.kind)}});
  }
  ordered_json spans = ordered_json::array();
  for (const auto &span : result.entity_spans) spans.push_back(SpanJson(span));
  ordered_json oov = ordered_json::array();
  for (const auto &rej : result.oov_rejections) {
    oov.push_back({{"start", rej.range.begin},
                   {"end", rej.range.end},
                   {"word", rej.rejected_word}});
  }
  ordered_json subs = ordered_json::array();
  for (const auto &sub : result.subsentences) {
    subs.push_back({{"anchor", SpanJson(sub.anchor)},
                    {"context", sub.context_token_indices},
                    {"rendered", sub.rendered}});
  }
  auto scored = [](const auto &items) {
    ordered_json out = ordered_json::array();
    for (const auto &c : items) {
      out.push_back({{"entity_id", c.entity_id},
                     {"score", c.score},
                     {"subsentence", c.subsentence_index}});
    }
    return out;
  };

  ordered_json assembly;
  if (!result.assembly) {
    assembly = {{"status", "empty_link_set"},
                {"message", "no understood entities"}};
  } else {
    const AssemblyResult &a = *result.assembly;
    ordered_json packages = ordered_json::array();
    for (const auto &p : a.matched_packages) {
      packages.push_back(
          {{"id", p.id}, {"name", p.display_name}, {"members", p.members}});
    }
    ordered_json coverage = ordered_json::array();
    for (const auto &row : a.diagnostics) {
      coverage.push_back({{"package", row.package_id},
                          {"matched", row.matched},
                          {"missing", row.missing}});
    }
    assembly = {{"status", a.matched_packages.empty() ? "no_match" : "matched"},
                {"required", a.required},
                {"packages", packages},
                {"coverage", coverage}};
  }

  return {{"input", result.input_text},
          {"tokens", tokens},
          {"entity_spans", spans},
          {"oov_rejections", oov},
          {"subsentences", subs},
          {"candidates", scored(result.candidates)},
          {"linked_entities", scored(result.linked_entities)},
          {"assembly", assembly},
          {"diagnostics", result.diagnostics}};
}

std::string ResultJsonText(const PipelineResult &result) {
  return ResultToJson(result).dump(2) + "\n";
}

InteractionRecord MakeRecord(const PipelineResult &result,
                             std::chrono::system_clock::time_point now) {
  InteractionRecord record;
  record.timestamp = now;
  record.input = result.input_text;
  for (const auto &link : result.linked_entities) {
    record.linked.push_back(link.entity_id);
  }
  if (result.assembly) {
    for (const auto &p : result.assembly->matched_packages) {
      record.packages.push_back(p.id);
    }
  }
  for (const auto &rej : result.oov_rejections) {
    record.oov.push_back(rej.rejected_word);
  }
  return record;
}

std::string RecordToJsonLine(const InteractionRecord &record) {
  ordered_json line = {{"ts", FormatTimestamp(record.timestamp)},
                       {"input", record.input},
                       {"linked", record.linked},
                       {"packages", record.packages},
                       {"oov", record.oov}};
  return line.dump();
}

void InteractionLog::Append(const InteractionRecord &record) {
  std::string line = RecordToJsonLine(record) + "\n";
  std::lock_guard<std::mutex> lock(mu_);
  int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC,
                  0644);
  if (fd < 0) {
    throw SinkUnavailable(path_ + ": " + std::strerror(errno));
  }
  ssize_t written = ::write(fd, line.data(), line.size());
  int saved = errno;
  ::close(fd);
  if (written != static_cast<ssize_t>(line.size())) {
    throw SinkUnavailable(path_ + ": short write (" +
                          (written < 0 ? std::strerror(saved) : "partial") + ")");
  }
}

PipelineResult RunAndRecord(std::string_view text, const PipelineConfig &config,
                            InteractionLog *log) {
  PipelineResult result = Run(text, config);
  if (log != nullptr) {
    try {
      log->Append(MakeRecord(result, std::chrono::system_clock::now()));
    } catch (const SinkUnavailable &err) {
      result.diagnostics.push_back(std::string("interaction log unavailable: ") +
                                   err.what());
    }
  }
  return result;
}

}  // namespace entlink
