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

#include "entlink/context.h"

#include <algorithm>

namespace entlink {
namespace {

bool IsNumeric(const Token &t) {
  return t.kind == TokenKind::kNumber || t.kind == TokenKind::kQuantity;
}

bool IsConnector(const Token &t, const LexiconConfig &lexicon) {
  return t.kind == TokenKind::kWord &&
         lexicon.connector_words.count(t.normalized) > 0;
}

bool IsBoundary(const Token &t, const LexiconConfig &lexicon) {
  return t.kind == TokenKind::kWord &&
         lexicon.boundary_words.count(t.normalized) > 0;
}

}  // namespace

std::vector<size_t> SubSentence::TokenIndices() const {
  std::vector<size_t> out = context_token_indices;
  for (size_t i = anchor.range.begin; i < anchor.range.end; ++i) {
    out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubSentence> BuildSubsentences(const std::vector<Token> &tokens,
                                           const std::vector<EntitySpan> &kept,
                                           const LexiconConfig &lexicon) {
  std::vector<bool> occupied(tokens.size(), false);
  for (const EntitySpan &span : kept) {
    for (size_t i = span.range.begin; i < span.range.end; ++i) {
      occupied[i] = true;
    }
  }
  auto free = [&](size_t i) { return !occupied[i]; };

  std::vector<SubSentence> out;
  out.reserve(kept.size());
  for (const EntitySpan &span : kept) {
    SubSentence sub;
    sub.anchor = span;

    // Left expansion walks backwards from the token before the anchor.
    size_t j = span.range.begin;
    if (j >= 2 && free(j - 1) && IsConnector(tokens[j - 1], lexicon) &&
        free(j - 2) && IsNumeric(tokens[j - 2])) {
      --j;
    }
    size_t absorbed = 0;
    while (j > 0 && absorbed < kMaxLeftContext) {
      const Token &t = tokens[j - 1];
      bool eligible =
          free(j - 1) &&
          (IsNumeric(t) || (t.kind == TokenKind::kWord &&
                            !IsBoundary(t, lexicon) &&
                            !IsConnector(t, lexicon)));
      if (!eligible) break;
      sub.context_token_indices.push_back(j - 1);
      ++absorbed;
      --j;
    }

    size_t k = span.range.end;
    if (k < tokens.size() && free(k) && IsConnector(tokens[k], lexicon)) {
      sub.context_token_indices.push_back(k++);
      while (k < tokens.size() && free(k) &&
             tokens[k].kind != TokenKind::kPunctuation &&
             !IsBoundary(tokens[k], lexicon)) {
        sub.context_token_indices.push_back(k++);
      }
    }
    std::sort(sub.context_token_indices.begin(),
              sub.context_token_indices.end());

    for (size_t i : sub.TokenIndices()) {
      if (!sub.rendered.empty()) sub.rendered += ' ';
      sub.rendered += tokens[i].normalized;
    }
    out.push_back(std::move(sub));
  }
  return out;
}

}  // namespace entlink
