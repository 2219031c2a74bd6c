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

#ifndef ENTLINK_TEXT_H_
#define ENTLINK_TEXT_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace entlink {

// Byte range [start, end) into the analyzed input.
struct Span {
  size_t start = 0;
  size_t end = 0;

  bool operator==(const Span &) const = default;
};

enum class TokenKind { kWord, kNumber, kQuantity, kPunctuation };

const char *TokenKindName(TokenKind kind);

struct Token {
  std::string surface;
  std::string normalized;
  std::string lemma;
  Span span;
  TokenKind kind = TokenKind::kWord;

  bool operator==(const Token &) const = default;
};

// Per-language resources. All keys and word sets are stored normalized.
struct LexiconConfig {
  std::string language;
  std::unordered_map<std::string, std::string> lemma_map;
  std::set<std::string> unit_words;
  std::set<std::string> connector_words;
  std::set<std::string> boundary_words;

  bool operator==(const LexiconConfig &) const = default;
};

// Parses a lexicon document: {"language", "lemmas", "units", "connectors",
// "boundaries"}. Throws LexiconError on schema violations or when a key or
// word is not already in normalized form.
LexiconConfig ParseLexicon(const nlohmann::json &doc);
LexiconConfig LoadLexiconFile(const std::string &path);
nlohmann::json LexiconToJson(const LexiconConfig &lexicon);

// The English resource set shipped with the library (data/lexicon/en.json).
const LexiconConfig &DefaultLexicon();

// Dictionary view of numbers and quantities.
inline constexpr std::string_view kNumberConstant = "<NUM>";

bool IsValidUtf8(std::string_view text);

// Number of code points; invalid bytes count as one each.
size_t CodePointCount(std::string_view text);

// Lowercase, canonical decomposition with combining marks dropped.
// Idempotent.
std::string Normalize(std::string_view surface);

// Splits on whitespace and punctuation. Punctuation marks become their own
// tokens. A '.' or ',' between two digits stays inside the token. Lemmas are
// set to the normalized form.
std::vector<Token> Tokenize(std::string_view text);

// lemma_map lookup with identity fallback.
std::string Lemmatize(const std::string &normalized,
                      const LexiconConfig &lexicon);

// Replaces each adjacent (number, unit word) pair by a single quantity token
// ("1" "TB" -> "1tb"). A single word token of the form <number><unit> such as
// "8GB" is reclassified as a quantity in place.
std::vector<Token> FuseQuantities(const std::vector<Token> &tokens,
                                  const LexiconConfig &lexicon);

// "<NUM>" for numbers and quantities, the lemma otherwise.
std::string NumberConstantView(const Token &token);

// Tokenize, fuse quantities and fill in lemmas.
std::vector<Token> Analyze(std::string_view text,
                           const LexiconConfig &lexicon);

// True if `text` is a decimal number: digits with at most one '.' or ','
// separator between digits.
bool IsNumber(std::string_view text);

}  // namespace entlink

#endif  // ENTLINK_TEXT_H_
