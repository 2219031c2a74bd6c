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

#include "entlink/text.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "entlink/error.h"

namespace entlink {
namespace {

struct FoldEntry {
  char32_t cp;
  const char *replacement;
};

struct CodeRange {
  char32_t lo;
  char32_t hi;
};

#include "unicode_tables.inc"

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point at text[pos]. Invalid sequences yield kInvalid with
// a length of one byte.
char32_t Decode(std::string_view text, size_t pos, size_t *len) {
  auto byte = [&](size_t i) { return static_cast<unsigned char>(text[i]); };
  unsigned char b0 = byte(pos);
  *len = 1;
  if (b0 < 0x80) return b0;
  size_t need;
  char32_t cp;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    need = 1, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    need = 2, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    need = 3, cp = b0 & 0x07, min = 0x10000;
  } else {
    return kInvalid;
  }
  if (pos + need >= text.size()) return kInvalid;
  for (size_t i = 1; i <= need; ++i) {
    unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return kInvalid;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return kInvalid;
  }
  *len = need + 1;
  return cp;
}

template <size_t N>
bool InRanges(const CodeRange (&ranges)[N], char32_t cp) {
  auto it = std::upper_bound(
      std::begin(ranges), std::end(ranges), cp,
      [](char32_t c, const CodeRange &r) { return c < r.lo; });
  if (it == std::begin(ranges)) return false;
  --it;
  return cp <= it->hi;
}

bool IsSpace(char32_t cp) { return InRanges(kSpaceRanges, cp); }
bool IsPunct(char32_t cp) { return InRanges(kPunctRanges, cp); }

const char *Fold(char32_t cp) {
  auto it = std::lower_bound(
      std::begin(kFoldTable), std::end(kFoldTable), cp,
      [](const FoldEntry &e, char32_t c) { return e.cp < c; });
  if (it == std::end(kFoldTable) || it->cp != cp) return nullptr;
  return it->replacement;
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// Length of the leading number-shaped prefix (digits and separators).
size_t NumericPrefix(std::string_view s) {
  size_t i = 0;
  while (i < s.size() && (IsDigit(s[i]) || s[i] == '.' || s[i] == ',')) ++i;
  return i;
}

std::vector<Token> Fuse(const std::vector<Token> &tokens,
                        const LexiconConfig &lexicon,
                        const std::string_view *text) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    const Token &t = tokens[i];
    if (t.kind == TokenKind::kNumber && i + 1 < tokens.size() &&
        tokens[i + 1].kind == TokenKind::kWord &&
        lexicon.unit_words.count(tokens[i + 1].normalized)) {
      const Token &unit = tokens[i + 1];
      Token fused;
      fused.span = {t.span.start, unit.span.end};
      if (text != nullptr) {
        fused.surface = std::string(
            text->substr(fused.span.start, fused.span.end - fused.span.start));
      } else {
        fused.surface = t.surface;
        if (unit.span.start > t.span.end) fused.surface += ' ';
        fused.surface += unit.surface;
      }
      fused.normalized = t.normalized + unit.normalized;
      fused.lemma = fused.normalized;
      fused.kind = TokenKind::kQuantity;
      out.push_back(std::move(fused));
      ++i;
      continue;
    }
    Token copy = t;
    if (t.kind == TokenKind::kWord) {
      size_t prefix = NumericPrefix(t.normalized);
      if (prefix > 0 && prefix < t.normalized.size() &&
          IsNumber(std::string_view(t.normalized).substr(0, prefix)) &&
          lexicon.unit_words.count(t.normalized.substr(prefix))) {
        copy.kind = TokenKind::kQuantity;
      }
    }
    out.push_back(std::move(copy));
  }
  return out;
}

std::set<std::string> ParseWordSet(const nlohmann::json &doc,
                                   const char *key) {
  const auto &arr = doc.at(key);
  if (!arr.is_array()) throw LexiconError(std::string(key) + ": expected array");
  std::set<std::string> out;
  for (const auto &w : arr) {
    if (!w.is_string()) {
      throw LexiconError(std::string(key) + ": expected strings");
    }
    std::string s = w.get<std::string>();
    if (s.empty() || Normalize(s) != s) {
      throw LexiconError(std::string(key) + ": word '" + s +
                         "' is not normalized");
    }
    out.insert(std::move(s));
  }
  return out;
}

constexpr const char *kDefaultLexiconJson = R"json({
  "language": "en",
  "lemmas": {
    "cards": "card",
    "computers": "computer",
    "drives": "drive",
    "games": "game",
    "graphics": "graphic",
    "memories": "memory",
    "played": "play",
    "playing": "play",
    "plays": "play",
    "processors": "processor",
    "videogames": "videogame",
    "wants": "want"
  },
  "units": ["gb", "ghz", "hz", "kb", "mb", "mhz", "tb"],
  "connectors": ["for", "of", "to"],
  "boundaries": [
    "a", "also", "an", "and", "are", "at", "but", "have", "i", "in", "is",
    "like", "me", "my", "need", "on", "or", "plus", "the", "want", "with",
    "would"
  ]
})json";

}  // namespace

const char *TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord: return "word";
    case TokenKind::kNumber: return "number";
    case TokenKind::kQuantity: return "quantity";
    case TokenKind::kPunctuation: return "punctuation";
  }
  return "word";
}

bool IsValidUtf8(std::string_view text) {
  size_t pos = 0;
  while (pos < text.size()) {
    size_t len;
    if (Decode(text, pos, &len) == kInvalid) return false;
    pos += len;
  }
  return true;
}

size_t CodePointCount(std::string_view text) {
  size_t count = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t len;
    Decode(text, pos, &len);
    pos += len;
    ++count;
  }
  return count;
}

std::string Normalize(std::string_view surface) {
  std::string out;
  out.reserve(surface.size());
  size_t pos = 0;
  while (pos < surface.size()) {
    size_t len;
    char32_t cp = Decode(surface, pos, &len);
    const char *folded = cp == kInvalid ? nullptr : Fold(cp);
    if (folded != nullptr) {
      out += folded;
    } else {
      out.append(surface.substr(pos, len));
    }
    pos += len;
  }
  return out;
}

bool IsNumber(std::string_view text) {
  if (text.empty() || !IsDigit(text.front()) || !IsDigit(text.back())) {
    return false;
  }
  int separators = 0;
  for (char c : text) {
    if (c == '.' || c == ',') {
      ++separators;
    } else if (!IsDigit(c)) {
      return false;
    }
  }
  return separators <= 1;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t word_start = std::string_view::npos;

  auto flush = [&](size_t end) {
    if (word_start == std::string_view::npos) return;
    Token t;
    t.surface = std::string(text.substr(word_start, end - word_start));
    t.normalized = Normalize(t.surface);
    t.lemma = t.normalized;
    t.span = {word_start, end};
    t.kind = IsNumber(t.normalized) ? TokenKind::kNumber : TokenKind::kWord;
    tokens.push_back(std::move(t));
    word_start = std::string_view::npos;
  };

  size_t pos = 0;
  while (pos < text.size()) {
    size_t len;
    char32_t cp = Decode(text, pos, &len);
    if (cp != kInvalid && IsSpace(cp)) {
      flush(pos);
    } else if (cp != kInvalid && IsPunct(cp)) {
      bool in_number = (cp == '.' || cp == ',') &&
                       word_start != std::string_view::npos && pos > 0 &&
                       IsDigit(text[pos - 1]) && pos + 1 < text.size() &&
                       IsDigit(text[pos + 1]);
      if (!in_number) {
        flush(pos);
        Token t;
        t.surface = std::string(text.substr(pos, len));
        t.normalized = Normalize(t.surface);
        t.lemma = t.normalized;
        t.span = {pos, pos + len};
        t.kind = TokenKind::kPunctuation;
        tokens.push_back(std::move(t));
      }
    } else if (word_start == std::string_view::npos) {
      word_start = pos;
    }
    pos += len;
  }
  flush(text.size());
  return tokens;
}

std::string Lemmatize(const std::string &normalized,
                      const LexiconConfig &lexicon) {
  auto it = lexicon.lemma_map.find(normalized);
  return it == lexicon.lemma_map.end() ? normalized : it->second;
}

std::vector<Token> FuseQuantities(const std::vector<Token> &tokens,
                                  const LexiconConfig &lexicon) {
  return Fuse(tokens, lexicon, nullptr);
}

std::string NumberConstantView(const Token &token) {
  if (token.kind == TokenKind::kNumber || token.kind == TokenKind::kQuantity) {
    return std::string(kNumberConstant);
  }
  return token.lemma;
}

std::vector<Token> Analyze(std::string_view text,
                           const LexiconConfig &lexicon) {
  std::vector<Token> tokens = Fuse(Tokenize(text), lexicon, &text);
  for (Token &t : tokens) t.lemma = Lemmatize(t.normalized, lexicon);
  return tokens;
}

LexiconConfig ParseLexicon(const nlohmann::json &doc) {
  static const std::set<std::string> kKeys = {"language", "lemmas", "units",
                                              "connectors", "boundaries"};
  if (!doc.is_object()) throw LexiconError("lexicon: expected object");
  for (const auto &[key, value] : doc.items()) {
    if (!kKeys.count(key)) throw LexiconError("lexicon: unknown key " + key);
  }
  for (const auto &key : kKeys) {
    if (!doc.contains(key)) throw LexiconError("lexicon: missing key " + key);
  }
  LexiconConfig lexicon;
  if (!doc.at("language").is_string()) {
    throw LexiconError("language: expected string");
  }
  lexicon.language = doc.at("language").get<std::string>();
  const auto &lemmas = doc.at("lemmas");
  if (!lemmas.is_object()) throw LexiconError("lemmas: expected object");
  for (const auto &[form, lemma] : lemmas.items()) {
    if (!lemma.is_string()) throw LexiconError("lemmas." + form + ": expected string");
    if (form.empty() || Normalize(form) != form) {
      throw LexiconError("lemmas: key '" + form + "' is not normalized");
    }
    lexicon.lemma_map.emplace(form, lemma.get<std::string>());
  }
  lexicon.unit_words = ParseWordSet(doc, "units");
  lexicon.connector_words = ParseWordSet(doc, "connectors");
  lexicon.boundary_words = ParseWordSet(doc, "boundaries");
  return lexicon;
}

LexiconConfig LoadLexiconFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open lexicon " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded()) throw LexiconError(path + ": malformed JSON");
  return ParseLexicon(doc);
}

nlohmann::json LexiconToJson(const LexiconConfig &lexicon) {
  nlohmann::json lemmas = nlohmann::json::object();
  for (const auto &[form, lemma] : lexicon.lemma_map) lemmas[form] = lemma;
  return {{"language", lexicon.language},
          {"lemmas", lemmas},
          {"units", lexicon.unit_words},
          {"connectors", lexicon.connector_words},
          {"boundaries", lexicon.boundary_words}};
}

const LexiconConfig &DefaultLexicon() {
  static const LexiconConfig lexicon =
      ParseLexicon(nlohmann::json::parse(kDefaultLexiconJson));
  return lexicon;
}

}  // namespace entlink
