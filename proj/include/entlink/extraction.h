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

#ifndef ENTLINK_EXTRACTION_H_
#define ENTLINK_EXTRACTION_H_

#include <string>
#include <unordered_map>
#include <vector>

#include "entlink/kg.h"
#include "entlink/text.h"

namespace entlink {

// Token index range [begin, end).
struct TokenRange {
  size_t begin = 0;
  size_t end = 0;

  bool Overlaps(const TokenRange &other) const {
    return begin < other.end && other.begin < end;
  }
  bool operator==(const TokenRange &) const = default;
};

enum class SpanSource { kPattern, kGazetteer };

const char *SpanSourceName(SpanSource source);

struct EntitySpan {
  TokenRange range;
  std::string entity_type;
  SpanSource source = SpanSource::kPattern;
  std::string matched_rule;  // rule name, or the alias text

  bool operator==(const EntitySpan &) const = default;
};

struct OovRejection {
  TokenRange range;
  std::string rejected_word;

  bool operator==(const OovRejection &) const = default;
};

// Longest token window a pattern rule may match.
inline constexpr size_t kMaxPatternTokens = 8;

// Alias index keyed by the first normalized token of each alias.
class Gazetteer {
 public:
  struct Entry {
    std::vector<std::string> tokens;
    std::string entity_id;
    std::string entity_type;
    std::string alias;
  };

  Gazetteer() = default;
  Gazetteer(const KnowledgeGraph &kg, const LexiconConfig &lexicon);

  // Longest alias starting at tokens[pos]; ties go to the smaller entity id.
  const Entry *LongestMatch(const std::vector<Token> &tokens,
                            size_t pos) const;

 private:
  // Each bucket is sorted by length descending, then entity id ascending.
  std::unordered_map<std::string, std::vector<Entry>> by_first_;
};

// Applies rules in priority order. A token claimed by an earlier match is
// unavailable to later ones. Windows are scanned left to right, longest first.
std::vector<EntitySpan> ExtractPattern(const std::vector<Token> &tokens,
                                       const std::vector<PatternRule> &rules);

std::vector<EntitySpan> ExtractGazetteer(const std::vector<Token> &tokens,
                                         const Gazetteer &gazetteer);

// Pattern spans first; gazetteer spans that overlap any of them are dropped.
// Sorted by start token.
std::vector<EntitySpan> ExtractEntities(const std::vector<Token> &tokens,
                                        const KnowledgeGraph &kg,
                                        const Gazetteer &gazetteer);

struct OovResult {
  std::vector<EntitySpan> kept;
  std::vector<OovRejection> rejected;
};

// Keeps a span iff the lemmatized number-constant view of each of its
// non-punctuation tokens is in the vocabulary.
OovResult FilterOov(const std::vector<EntitySpan> &spans,
                    const std::vector<Token> &tokens, const KnowledgeGraph &kg,
                    const LexiconConfig &lexicon);

}  // namespace entlink

#endif  // ENTLINK_EXTRACTION_H_
