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

#include "entlink/extraction.h"

#include <algorithm>

namespace entlink {

const char *SpanSourceName(SpanSource source) {
  return source == SpanSource::kPattern ? "pattern" : "gazetteer";
}

Gazetteer::Gazetteer(const KnowledgeGraph &kg, const LexiconConfig &lexicon) {
  for (const auto &[id, entity] : kg.entities) {
    for (const auto &alias : entity.aliases) {
      Entry entry{{}, id, entity.entity_type, alias};
      for (const Token &t : Analyze(alias, lexicon)) {
        entry.tokens.push_back(t.normalized);
      }
      if (entry.tokens.empty()) continue;
      by_first_[entry.tokens.front()].push_back(std::move(entry));
    }
  }
  for (auto &[first, bucket] : by_first_) {
    std::sort(bucket.begin(), bucket.end(),
              [](const Entry &a, const Entry &b) {
                if (a.tokens.size() != b.tokens.size()) {
                  return a.tokens.size() > b.tokens.size();
                }
                return a.entity_id < b.entity_id;
              });
  }
}

const Gazetteer::Entry *Gazetteer::LongestMatch(
    const std::vector<Token> &tokens, size_t pos) const {
  auto it = by_first_.find(tokens[pos].normalized);
  if (it == by_first_.end()) return nullptr;
  for (const Entry &entry : it->second) {
    if (pos + entry.tokens.size() > tokens.size()) continue;
    bool match = true;
    for (size_t i = 1; i < entry.tokens.size() && match; ++i) {
      match = tokens[pos + i].normalized == entry.tokens[i];
    }
    if (match) return &entry;
  }
  return nullptr;
}

std::vector<EntitySpan> ExtractPattern(const std::vector<Token> &tokens,
                                       const std::vector<PatternRule> &rules) {
  std::vector<EntitySpan> spans;
  std::vector<bool> claimed(tokens.size(), false);
  for (const PatternRule &rule : rules) {
    if (!rule.compiled) continue;
    size_t i = 0;
    while (i < tokens.size()) {
      size_t matched = 0;
      size_t longest = std::min(kMaxPatternTokens, tokens.size() - i);
      // Free run starting at i bounds the window.
      size_t free = 0;
      while (free < longest && !claimed[i + free]) ++free;
      for (size_t len = free; len >= 1; --len) {
        std::string window = tokens[i].normalized;
        for (size_t j = 1; j < len; ++j) {
          window += ' ';
          window += tokens[i + j].normalized;
        }
        if (std::regex_match(window, *rule.compiled)) {
          matched = len;
          break;
        }
      }
      if (matched == 0) {
        ++i;
        continue;
      }
      spans.push_back({{i, i + matched}, rule.entity_type,
                       SpanSource::kPattern, rule.name});
      std::fill(claimed.begin() + i, claimed.begin() + i + matched, true);
      i += matched;
    }
  }
  std::sort(spans.begin(), spans.end(),
            [](const EntitySpan &a, const EntitySpan &b) {
              return a.range.begin < b.range.begin;
            });
  return spans;
}

std::vector<EntitySpan> ExtractGazetteer(const std::vector<Token> &tokens,
                                         const Gazetteer &gazetteer) {
  std::vector<EntitySpan> spans;
  size_t i = 0;
  while (i < tokens.size()) {
    const Gazetteer::Entry *entry = gazetteer.LongestMatch(tokens, i);
    if (entry == nullptr) {
      ++i;
      continue;
    }
    size_t end = i + entry->tokens.size();
    spans.push_back({{i, end}, entry->entity_type, SpanSource::kGazetteer,
                     entry->alias});
    i = end;
  }
  return spans;
}

std::vector<EntitySpan> ExtractEntities(const std::vector<Token> &tokens,
                                        const KnowledgeGraph &kg,
                                        const Gazetteer &gazetteer) {
  std::vector<EntitySpan> spans = ExtractPattern(tokens, kg.rules);
  size_t pattern_count = spans.size();
  for (EntitySpan &span : ExtractGazetteer(tokens, gazetteer)) {
    bool overlaps = std::any_of(
        spans.begin(), spans.begin() + pattern_count,
        [&](const EntitySpan &p) { return p.range.Overlaps(span.range); });
    if (!overlaps) spans.push_back(std::move(span));
  }
  std::stable_sort(spans.begin(), spans.end(),
                   [](const EntitySpan &a, const EntitySpan &b) {
                     return a.range.begin < b.range.begin;
                   });
  return spans;
}

OovResult FilterOov(const std::vector<EntitySpan> &spans,
                    const std::vector<Token> &tokens, const KnowledgeGraph &kg,
                    const LexiconConfig &lexicon) {
  OovResult result;
  for (const EntitySpan &span : spans) {
    const std::string *failing = nullptr;
    std::string view;
    for (size_t i = span.range.begin; i < span.range.end; ++i) {
      if (tokens[i].kind == TokenKind::kPunctuation) continue;
      view = Lemmatize(NumberConstantView(tokens[i]), lexicon);
      if (!kg.vocabulary.count(view)) {
        failing = &view;
        break;
      }
    }
    if (failing != nullptr) {
      result.rejected.push_back({span.range, *failing});
    } else {
      result.kept.push_back(span);
    }
  }
  return result;
}

}  // namespace entlink
