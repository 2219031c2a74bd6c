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

#include "entlink/linking.h"

#include <algorithm>
#include <cmath>

#include "entlink/error.h"

namespace entlink {
namespace {

SparseVector Weigh(const std::map<uint32_t, double> &tf,
                   const std::vector<double> &idf) {
  SparseVector v;
  double norm2 = 0.0;
  for (const auto &[dim, count] : tf) {
    double w = count * idf[dim];
    v.entries.emplace_back(dim, w);
    norm2 += w * w;
  }
  if (norm2 > 0.0) {
    double norm = std::sqrt(norm2);
    for (auto &entry : v.entries) entry.second /= norm;
  }
  return v;
}

// Scores are compared on a kScoreTieEpsilon grid so that rounding noise
// cannot reorder exact ties.
long long ScoreKey(double score) { return std::llround(score / kScoreTieEpsilon); }

bool RanksBefore(const Candidate &a, const Candidate &b) {
  long long ka = ScoreKey(a.score);
  long long kb = ScoreKey(b.score);
  if (ka != kb) return ka > kb;
  return a.entity_id < b.entity_id;
}

}  // namespace

double SparseVector::Norm() const {
  double sum = 0.0;
  for (const auto &[dim, w] : entries) sum += w * w;
  return std::sqrt(sum);
}

SparseVector SparseVector::Scaled(double factor) const {
  SparseVector out = *this;
  for (auto &entry : out.entries) entry.second *= factor;
  return out;
}

double Cosine(const SparseVector &a, const SparseVector &b) {
  double na = a.Norm();
  double nb = b.Norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  double dot = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

std::string VectorTerm(const Token &token) {
  if (token.kind == TokenKind::kPunctuation) return {};
  return token.lemma;
}

Vectorizer Vectorizer::Fit(const KnowledgeGraph &kg,
                           const LexiconConfig &lexicon) {
  if (kg.entities.empty()) throw EmptyCorpus();
  Vectorizer v;
  std::map<std::string, std::vector<std::string>> terms;
  std::map<std::string, size_t> df;
  for (const auto &[id, entity] : kg.entities) {
    std::vector<std::string> &doc = terms[id];
    for (const Token &t : Analyze(entity.description, lexicon)) {
      std::string term = VectorTerm(t);
      if (!term.empty()) doc.push_back(std::move(term));
    }
    std::vector<std::string> unique = doc;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const auto &term : unique) ++df[term];
  }
  // Dimensions are assigned in lexicographic term order.
  double n = static_cast<double>(kg.entities.size());
  for (const auto &[term, count] : df) {
    v.index_.emplace(term, static_cast<uint32_t>(v.idf_.size()));
    v.idf_.push_back(std::log((1.0 + n) / (1.0 + count)) + 1.0);
  }
  for (const auto &[id, doc] : terms) {
    std::map<uint32_t, double> tf;
    for (const auto &term : doc) tf[v.index_.at(term)] += 1.0;
    v.documents_.emplace(id, Weigh(tf, v.idf_));
  }
  return v;
}

SparseVector Vectorizer::Vectorize(const std::vector<Token> &tokens) const {
  std::map<uint32_t, double> tf;
  for (const Token &t : tokens) {
    auto it = index_.find(VectorTerm(t));
    if (it != index_.end()) tf[it->second] += 1.0;
  }
  return Weigh(tf, idf_);
}

const SparseVector &Vectorizer::DocumentVector(
    const std::string &entity_id) const {
  auto it = documents_.find(entity_id);
  if (it == documents_.end()) throw UnknownEntity(entity_id);
  return it->second;
}

std::vector<Candidate> RankCandidates(const SparseVector &query,
                                      const KnowledgeGraph &kg,
                                      const Vectorizer &vectorizer,
                                      const std::string *entity_type,
                                      size_t k) {
  std::vector<Candidate> scored;
  for (const auto &[id, entity] : kg.entities) {
    if (entity_type != nullptr && entity.entity_type != *entity_type) continue;
    scored.push_back({id, Cosine(query, vectorizer.DocumentVector(id)), 0});
  }
  size_t keep = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                    RanksBefore);
  scored.resize(keep);
  return scored;
}

Disambiguation Disambiguate(const SubSentence &sub, size_t subsentence_index,
                            const std::vector<Token> &tokens,
                            const KnowledgeGraph &kg,
                            const Vectorizer &vectorizer,
                            const LinkOptions &options) {
  std::vector<Token> text;
  for (size_t i : sub.TokenIndices()) text.push_back(tokens[i]);
  SparseVector query = vectorizer.Vectorize(text);

  Disambiguation result;
  result.candidates = RankCandidates(
      query, kg, vectorizer,
      options.filter_by_type ? &sub.anchor.entity_type : nullptr, options.k);
  for (Candidate &c : result.candidates) c.subsentence_index = subsentence_index;
  if (!result.candidates.empty() &&
      result.candidates.front().score >= options.tau) {
    const Candidate &top = result.candidates.front();
    result.best = LinkedEntity{top.entity_id, top.score, subsentence_index};
  }
  return result;
}

}  // namespace entlink
