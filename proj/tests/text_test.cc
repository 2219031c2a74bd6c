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

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "entlink/error.h"
#include "entlink/text.h"
#include "test_util.h"

namespace entlink {
namespace {

std::vector<std::string> Surfaces(const std::vector<Token> &tokens) {
  std::vector<std::string> out;
  for (const auto &t : tokens) out.push_back(t.surface);
  return out;
}

LexiconConfig UnitsLexicon() {
  LexiconConfig lexicon;
  lexicon.unit_words = {"tb", "gb"};
  return lexicon;
}

// Re-parses a fused quantity into its number and unit.
std::pair<std::string, std::string> SplitQuantity(const std::string &q) {
  size_t i = 0;
  while (i < q.size() && ((q[i] >= '0' && q[i] <= '9') || q[i] == '.')) ++i;
  return {q.substr(0, i), q.substr(i)};
}

TEST_SUITE("text") {
  TEST_CASE("tokenize splits words and punctuation") {
    auto tokens = Tokenize("I want shoes.");
    CHECK(Surfaces(tokens) == std::vector<std::string>{"I", "want", "shoes", "."});
    CHECK(tokens[3].kind == TokenKind::kPunctuation);
  }

  TEST_CASE("tokenize classifies numbers") {
    auto tokens = Tokenize("1 TB of storage");
    REQUIRE(tokens.size() == 4);
    CHECK(tokens[0].kind == TokenKind::kNumber);
    CHECK(tokens[1].kind == TokenKind::kWord);
    CHECK(tokens[1].normalized == "tb");
    CHECK(tokens[3].surface == "storage");
  }

  TEST_CASE("tokenize keeps decimal separators inside numbers") {
    auto tokens = Tokenize("1.5 TB, 2,5 GB and 3.");
    CHECK(Surfaces(tokens) ==
          std::vector<std::string>{"1.5", "TB", ",", "2,5", "GB", "and", "3", "."});
    CHECK(tokens[0].kind == TokenKind::kNumber);
    CHECK(tokens[3].kind == TokenKind::kNumber);
  }

  TEST_CASE("tokenize of empty and blank input") {
    CHECK(Tokenize("").empty());
    CHECK(Tokenize(" \t\n ").empty());
  }

  TEST_CASE("tokenize handles non-ASCII text") {
    auto tokens = Tokenize("¿Configuración rápida?");
    CHECK(Surfaces(tokens) ==
          std::vector<std::string>{"¿", "Configuración", "rápida", "?"});
    CHECK(tokens[1].normalized == "configuracion");
  }

  TEST_CASE("normalize") {
    CHECK(Normalize("TB") == "tb");
    CHECK(Normalize("Configuración") == "configuracion");
    CHECK(Normalize("i7") == "i7");
    CHECK(Normalize("ÀÉÎÕÜ ñ Ç") == "aeiou n c");
    CHECK(Normalize("e\xCC\x81") == "e");  // decomposed accent
  }

  TEST_CASE("number classification") {
    CHECK(IsNumber("512"));
    CHECK(IsNumber("1.5"));
    CHECK(IsNumber("2,5"));
    CHECK_FALSE(IsNumber("1.2.3"));
    CHECK_FALSE(IsNumber("i5"));
    CHECK_FALSE(IsNumber(""));
  }

  TEST_CASE("lemmatize uses the table with identity fallback") {
    const auto &lexicon = testing::FixtureSnapshot()->lexicon;
    CHECK(Lemmatize("computers", lexicon) == "computer");
    CHECK(Lemmatize("videogames", lexicon) == "videogame");
    CHECK(Lemmatize("storage", lexicon) == "storage");
  }

  TEST_CASE("fuse quantities") {
    LexiconConfig lexicon = UnitsLexicon();
    auto fused = FuseQuantities(Tokenize("1 TB"), lexicon);
    REQUIRE(fused.size() == 1);
    CHECK(fused[0].kind == TokenKind::kQuantity);
    CHECK(fused[0].normalized == "1tb");
    CHECK(SplitQuantity(fused[0].normalized) ==
          std::pair<std::string, std::string>{"1", "tb"});
    CHECK(fused[0].span == Span{0, 4});

    fused = FuseQuantities(Tokenize("512 GB of"), lexicon);
    REQUIRE(fused.size() == 2);
    CHECK(fused[0].normalized == "512gb");
    CHECK(SplitQuantity(fused[0].normalized) ==
          std::pair<std::string, std::string>{"512", "gb"});
    CHECK(fused[1].normalized == "of");

    auto plain = Tokenize("i5 processor");
    CHECK(FuseQuantities(plain, lexicon) == plain);
  }

  TEST_CASE("glued quantities are reclassified") {
    auto fused = FuseQuantities(Tokenize("8GB of RAM"), UnitsLexicon());
    REQUIRE(fused.size() == 3);
    CHECK(fused[0].kind == TokenKind::kQuantity);
    CHECK(fused[0].normalized == "8gb");
    CHECK(fused[2].kind == TokenKind::kWord);
  }

  TEST_CASE("analyze keeps the exact fused surface") {
    auto tokens = Analyze("1\t TB", UnitsLexicon());
    REQUIRE(tokens.size() == 1);
    CHECK(tokens[0].surface == "1\t TB");
  }

  TEST_CASE("number constant view") {
    auto tokens = Analyze("1 TB storage 512", UnitsLexicon());
    REQUIRE(tokens.size() == 3);
    CHECK(NumberConstantView(tokens[0]) == "<NUM>");
    CHECK(NumberConstantView(tokens[1]) == "storage");
    CHECK(NumberConstantView(tokens[2]) == "<NUM>");
  }

  TEST_CASE("utf-8 validation") {
    CHECK(IsValidUtf8("plain"));
    CHECK(IsValidUtf8("configuración ✓ 𝄞"));
    CHECK_FALSE(IsValidUtf8("\xC3"));
    CHECK_FALSE(IsValidUtf8("\xC0\xAF"));        // overlong
    CHECK_FALSE(IsValidUtf8("\xED\xA0\x80"));    // surrogate
    CHECK_FALSE(IsValidUtf8("a\xFF" "b"));
    CHECK(CodePointCount("añb") == 3);
  }

  TEST_CASE("lexicon parsing") {
    CHECK(DefaultLexicon() == LoadLexiconFile(testing::FixtureLexiconPath()));
    auto doc = LexiconToJson(DefaultLexicon());
    CHECK(ParseLexicon(doc) == DefaultLexicon());

    auto bad = doc;
    bad["units"] = {"GB"};
    CHECK_THROWS_AS(ParseLexicon(bad), LexiconError);
    bad = doc;
    bad["extra"] = 1;
    CHECK_THROWS_AS(ParseLexicon(bad), LexiconError);
    bad = doc;
    bad.erase("boundaries");
    CHECK_THROWS_AS(ParseLexicon(bad), LexiconError);
    bad = doc;
    bad["lemmas"]["Cards"] = "card";
    CHECK_THROWS_AS(ParseLexicon(bad), LexiconError);
  }
}

// Random strings mixing ASCII, accented letters, digits, punctuation and
// spacing.
std::string RandomText(std::mt19937 &rng, size_t max_len) {
  static const std::vector<std::string> kPieces = {
      "a", "B", "z", "Ñ", "é", "Ü", "ß", "İ", "Σ", "ǅ", "1", "7", "0", ".",
      ",", "!", "¿", " ", " ", "\t", "tb", "GB", "e\xCC\x81", "ﬁ", "Å"};
  std::uniform_int_distribution<size_t> len(0, max_len);
  std::uniform_int_distribution<size_t> piece(0, kPieces.size() - 1);
  std::string out;
  for (size_t i = len(rng); i > 0; --i) out += kPieces[piece(rng)];
  return out;
}

TEST_SUITE("text properties") {
  TEST_CASE("normalize is idempotent and yields lowercase") {
    std::mt19937 rng(7);
    for (int i = 0; i < 1000; ++i) {
      std::string s = RandomText(rng, 20);
      std::string once = Normalize(s);
      CHECK(Normalize(once) == once);
      for (char c : once) CHECK_FALSE((c >= 'A' && c <= 'Z'));
      CHECK(once.find("\xCC\x81") == std::string::npos);
    }
  }

  TEST_CASE("fusion merges exactly the number-unit pairs") {
    std::mt19937 rng(13);
    const LexiconConfig &lexicon = testing::FixtureSnapshot()->lexicon;
    for (int i = 0; i < 1000; ++i) {
      std::string s = testing::RandomQuantityText(rng);
      auto tokens = Tokenize(s);
      auto fused = FuseQuantities(tokens, lexicon);
      INFO(s);
      REQUIRE(fused.size() ==
              tokens.size() - testing::CountUnitPairs(tokens, lexicon));
      for (const auto &t : fused) {
        if (t.kind == TokenKind::kQuantity) {
          CHECK(t.surface == s.substr(t.span.start, t.span.end - t.span.start));
        }
      }
    }
  }

  TEST_CASE("token spans reconstruct the input") {
    std::mt19937 rng(11);
    for (int i = 0; i < 500; ++i) {
      std::string s = RandomText(rng, 30);
      auto tokens = Tokenize(s);
      std::string rebuilt;
      size_t pos = 0;
      for (const auto &t : tokens) {
        REQUIRE(t.span.start < t.span.end);
        REQUIRE(t.span.start >= pos);
        std::string gap = s.substr(pos, t.span.start - pos);
        CHECK(Tokenize(gap).empty());  // only whitespace is skipped
        rebuilt += gap + t.surface;
        CHECK(t.surface == s.substr(t.span.start, t.span.end - t.span.start));
        pos = t.span.end;
      }
      rebuilt += s.substr(pos);
      CHECK(rebuilt == s);
    }
  }
}

}  // namespace
}  // namespace entlink
