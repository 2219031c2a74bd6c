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

#ifndef ENTLINK_LINKING_H_
#define ENTLINK_LINKING_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "entlink/context.h"
#include "entlink/kg.h"
#include "entlink/text.h"

namespace entlink {

// Entries sorted by dimension, no zeros.
struct SparseVector {
  std::vector<std::pair<uint32_t, double>> entries;

  double Norm() const;
  SparseVector Scaled(double factor) const;
  bool operator==(const SparseVector &) const = default;
};

double Cosine(const SparseVector &a, const SparseVector &b);

// TF-IDF encoder fitted on entity descriptions. Immutable after Fit().
//
// Terms are token lemmas (quantities keep their magnitude, "1tb"); tf is the
// raw count and idf = ln((1 + N) / (1 + df)) + 1 with N the entity count.
class Vectorizer {
 public:
  Vectorizer() = default;

  // Throws EmptyCorpus when the graph has no entities.
  static Vectorizer Fit(const KnowledgeGraph &kg, const LexiconConfig &lexicon);

  // Unknown terms are ignored; the zero vector comes back when nothing is
  // known.
  SparseVector Vectorize(const std::vector<Token> &tokens) const;

  const std::unordered_map<std::string, uint32_t> &vocabulary_index() const {
    return index_;
  }
  const std::vector<double> &idf() const { return idf_; }
  const std::map<std::string, SparseVector> &document_vectors() const {
    return documents_;
  }
  const SparseVector &DocumentVector(const std::string &entity_id) const;

 private:
  std::unordered_map<std::string, uint32_t> index_;
  std::vector<double> idf_;
  std::map<std::string, SparseVector> documents_;
};

// Term of a token for vectorization, empty for punctuation.
std::string VectorTerm(const Token &token);

struct Candidate {
  std::string entity_id;
  double score = 0.0;
  size_t subsentence_index = 0;

  bool operator==(const Candidate &) const = default;
};

struct LinkedEntity {
  std::string entity_id;
  double score = 0.0;
  size_t subsentence_index = 0;

  bool operator==(const LinkedEntity &) const = default;
};

struct LinkOptions {
  double tau = 0.25;
  size_t k = 3;
  bool filter_by_type = true;
};

// Resolution at which candidate scores are ranked; ties go to the smaller id.
inline constexpr double kScoreTieEpsilon = 1e-12;

// Scores every entity (of `entity_type`, when given) against `query` and
// returns the top k, score descending then id ascending.
std::vector<Candidate> RankCandidates(const SparseVector &query,
                                      const KnowledgeGraph &kg,
                                      const Vectorizer &vectorizer,
                                      const std::string *entity_type,
                                      size_t k);

struct Disambiguation {
  std::vector<Candidate> candidates;
  std::optional<LinkedEntity> best;
};

Disambiguation Disambiguate(const SubSentence &sub, size_t subsentence_index,
                            const std::vector<Token> &tokens,
                            const KnowledgeGraph &kg,
                            const Vectorizer &vectorizer,
                            const LinkOptions &options);

}  // namespace entlink

#endif  // ENTLINK_LINKING_H_
