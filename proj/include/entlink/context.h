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

#ifndef ENTLINK_CONTEXT_H_
#define ENTLINK_CONTEXT_H_

#include <string>
#include <vector>

#include "entlink/extraction.h"
#include "entlink/text.h"

namespace entlink {

// An entity span plus the context tokens attached to it.
struct SubSentence {
  EntitySpan anchor;
  std::vector<size_t> context_token_indices;  // ascending, excludes anchor
  std::string rendered;

  // Anchor and context indices in sentence order.
  std::vector<size_t> TokenIndices() const;

  bool operator==(const SubSentence &) const = default;
};

// Maximum number of tokens absorbed to the left of an anchor.
inline constexpr size_t kMaxLeftContext = 3;

// Builds one sub-sentence per kept span.
//
// Left: absorbs the run of quantity/number tokens and ordinary words
// (not boundary, not connector, not in a kept span) directly before the
// anchor, at most kMaxLeftContext tokens. A single connector between the
// anchor and a preceding quantity or number is bridged: "1 TB of storage"
// gives "1tb storage".
//
// Right: when the next token is a connector, absorbs it and what follows up
// to a boundary word, punctuation, another kept span or the end of input.
std::vector<SubSentence> BuildSubsentences(const std::vector<Token> &tokens,
                                           const std::vector<EntitySpan> &kept,
                                           const LexiconConfig &lexicon);

}  // namespace entlink

#endif  // ENTLINK_CONTEXT_H_
