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

#ifndef ENTLINK_KG_H_
#define ENTLINK_KG_H_

#include <map>
#include <memory>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "entlink/text.h"
#include "json.hpp"

namespace entlink {

struct KgEntity {
  std::string id;
  std::string entity_type;
  std::vector<std::string> aliases;
  std::string description;

  bool operator==(const KgEntity &) const = default;
};

struct KgPackage {
  std::string id;
  std::string display_name;
  std::set<std::string> members;

  bool operator==(const KgPackage &) const = default;
};

// Regular expression over the space-joined normalized text of a token window.
struct PatternRule {
  std::string name;
  std::string expression;
  std::string entity_type;
  int priority = 0;
  std::shared_ptr<const std::regex> compiled;

  bool operator==(const PatternRule &other) const {
    return name == other.name && expression == other.expression &&
           entity_type == other.entity_type && priority == other.priority;
  }
};

// Immutable after construction; share it as std::shared_ptr<const ...>.
// The only edge type is package membership.
struct KnowledgeGraph {
  std::map<std::string, KgEntity> entities;
  std::map<std::string, KgPackage> packages;
  std::vector<PatternRule> rules;  // ascending priority
  std::set<std::string> vocabulary;
  std::set<std::string> extra_vocabulary;

  bool operator==(const KnowledgeGraph &) const = default;

  // Entity types plus the types declared by pattern rules.
  std::set<std::string> EntityTypes() const;
};

// Validates and assembles a graph from its parts, compiling rules and
// deriving the vocabulary. Throws the KgError family.
KnowledgeGraph BuildKg(std::vector<KgEntity> entities,
                       std::vector<KgPackage> packages,
                       std::vector<PatternRule> rules,
                       std::set<std::string> extra_vocabulary,
                       const LexiconConfig &lexicon);

// Parses a KG JSON document. See README for the schema.
KnowledgeGraph LoadKg(std::string_view document, const LexiconConfig &lexicon);
KnowledgeGraph LoadKgFile(const std::string &path,
                          const LexiconConfig &lexicon);

nlohmann::json SerializeKg(const KnowledgeGraph &kg);

// Dictionary view of every token of entity ids, aliases and descriptions,
// plus extra_vocabulary and the number constant.
std::set<std::string> DeriveVocabulary(const KnowledgeGraph &kg,
                                       const LexiconConfig &lexicon);

// Packages whose members include every id in `required`, ascending by id.
// Throws UnknownEntity.
std::vector<KgPackage> PackagesContainingAll(
    const KnowledgeGraph &kg, const std::set<std::string> &required);

struct CoverageRow {
  std::string package_id;
  size_t matched = 0;
  std::vector<std::string> missing;

  bool operator==(const CoverageRow &) const = default;
};

// One row per package, by matched count descending then id ascending.
std::vector<CoverageRow> CoverageReport(const KnowledgeGraph &kg,
                                        const std::set<std::string> &required);

enum class FindingKind {
  kAliasCollision,
  kUnreachableEntity,
  kVocabularyDrift,
  kEmptyDescription,
};

const char *FindingKindName(FindingKind kind);

struct ValidationFinding {
  FindingKind kind;
  std::string subject;
  std::string detail;
};

using ValidationReport = std::vector<ValidationFinding>;

ValidationReport ValidateKg(const KnowledgeGraph &kg,
                            const LexiconConfig &lexicon);

nlohmann::json ValidationReportToJson(const ValidationReport &report);

}  // namespace entlink

#endif  // ENTLINK_KG_H_
