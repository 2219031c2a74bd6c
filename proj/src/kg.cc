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

#include "entlink/kg.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "entlink/error.h"

namespace entlink {
namespace {

using nlohmann::json;

void RequireKeys(const json &obj, const std::string &path,
                 const std::set<std::string> &keys) {
  if (!obj.is_object()) throw SchemaError(path, "expected object");
  for (const auto &[key, value] : obj.items()) {
    if (!keys.count(key)) throw SchemaError(path + "." + key, "unexpected field");
  }
  for (const auto &key : keys) {
    if (!obj.contains(key)) throw SchemaError(path + "." + key, "missing field");
  }
}

std::string GetString(const json &obj, const std::string &key,
                      const std::string &path) {
  const json &value = obj.at(key);
  if (!value.is_string()) throw SchemaError(path + "." + key, "expected string");
  return value.get<std::string>();
}

const json &GetArray(const json &obj, const std::string &key,
                     const std::string &path) {
  const json &value = obj.at(key);
  if (!value.is_array()) throw SchemaError(path + "." + key, "expected array");
  return value;
}

std::vector<std::string> GetStrings(const json &obj, const std::string &key,
                                    const std::string &path) {
  std::vector<std::string> out;
  const json &arr = GetArray(obj, key, path);
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) {
      throw SchemaError(path + "." + key + "[" + std::to_string(i) + "]",
                        "expected string");
    }
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

std::string Indexed(const std::string &base, size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

bool IsUpperIdentifier(const std::string &id) {
  return !id.empty() &&
         std::none_of(id.begin(), id.end(), [](char c) {
           return (c >= 'a' && c <= 'z') || c == ' ' || c == '\t' || c == '\n';
         });
}

// Joined normalized token text; the key aliases are compared by.
std::string AliasKey(const std::string &alias, const LexiconConfig &lexicon) {
  std::string key;
  for (const Token &t : Analyze(alias, lexicon)) {
    if (!key.empty()) key += ' ';
    key += t.normalized;
  }
  return key;
}

void AddViews(std::string_view text, const LexiconConfig &lexicon,
              std::set<std::string> *vocabulary) {
  for (const Token &t : Analyze(text, lexicon)) {
    if (t.kind == TokenKind::kPunctuation) continue;
    vocabulary->insert(NumberConstantView(t));
  }
}

}  // namespace

std::set<std::string> KnowledgeGraph::EntityTypes() const {
  std::set<std::string> types;
  for (const auto &[id, entity] : entities) types.insert(entity.entity_type);
  for (const auto &rule : rules) types.insert(rule.entity_type);
  return types;
}

KnowledgeGraph BuildKg(std::vector<KgEntity> entities,
                       std::vector<KgPackage> packages,
                       std::vector<PatternRule> rules,
                       std::set<std::string> extra_vocabulary,
                       const LexiconConfig &lexicon) {
  KnowledgeGraph kg;
  std::set<std::string> ids;
  for (size_t i = 0; i < entities.size(); ++i) {
    KgEntity &e = entities[i];
    std::string path = Indexed("entities", i);
    if (!IsUpperIdentifier(e.id)) {
      throw SchemaError(path + ".id", "expected uppercase identifier, got '" +
                                          e.id + "'");
    }
    if (e.entity_type.empty()) throw SchemaError(path + ".type", "empty type");
    for (size_t j = 0; j < e.aliases.size(); ++j) {
      if (e.aliases[j].empty()) {
        throw SchemaError(Indexed(path + ".aliases", j), "empty alias");
      }
    }
    if (!ids.insert(e.id).second) {
      throw DuplicateId(path + ".id", "duplicate id " + e.id);
    }
    kg.entities.emplace(e.id, std::move(e));
  }
  for (size_t i = 0; i < packages.size(); ++i) {
    KgPackage &p = packages[i];
    std::string path = Indexed("packages", i);
    if (!IsUpperIdentifier(p.id)) {
      throw SchemaError(path + ".id", "expected uppercase identifier, got '" +
                                          p.id + "'");
    }
    if (!ids.insert(p.id).second) {
      throw DuplicateId(path + ".id", "duplicate id " + p.id);
    }
    if (p.members.empty()) throw SchemaError(path + ".members", "no members");
    for (const auto &member : p.members) {
      if (!kg.entities.count(member)) {
        throw DanglingReference(path + ".members",
                                "member " + member + " is not an entity");
      }
    }
    kg.packages.emplace(p.id, std::move(p));
  }
  std::set<std::string> rule_names;
  std::set<int> priorities;
  for (size_t i = 0; i < rules.size(); ++i) {
    PatternRule &r = rules[i];
    std::string path = Indexed("patterns", i);
    if (r.name.empty()) throw SchemaError(path + ".name", "empty name");
    if (r.entity_type.empty()) {
      throw SchemaError(path + ".entity_type", "empty entity type");
    }
    if (!rule_names.insert(r.name).second) {
      throw DuplicateId(path + ".name", "duplicate rule name " + r.name);
    }
    if (!priorities.insert(r.priority).second) {
      throw DuplicateId(path + ".priority",
                        "duplicate priority " + std::to_string(r.priority));
    }
    try {
      r.compiled = std::make_shared<const std::regex>(
          r.expression, std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error &err) {
      throw PatternCompileError(path + ".expression", err.what());
    }
  }
  std::sort(rules.begin(), rules.end(),
            [](const PatternRule &a, const PatternRule &b) {
              return a.priority < b.priority;
            });
  kg.rules = std::move(rules);
  kg.extra_vocabulary = std::move(extra_vocabulary);
  kg.vocabulary = DeriveVocabulary(kg, lexicon);
  return kg;
}

KnowledgeGraph LoadKg(std::string_view document, const LexiconConfig &lexicon) {
  json doc = json::parse(document, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("", "malformed JSON");
  RequireKeys(doc, "$", {"entities", "packages", "patterns", "extra_vocabulary"});

  std::vector<KgEntity> entities;
  const json &entity_arr = GetArray(doc, "entities", "$");
  for (size_t i = 0; i < entity_arr.size(); ++i) {
    std::string path = Indexed("entities", i);
    const json &e = entity_arr[i];
    RequireKeys(e, path, {"id", "type", "aliases", "description"});
    entities.push_back({GetString(e, "id", path), GetString(e, "type", path),
                        GetStrings(e, "aliases", path),
                        GetString(e, "description", path)});
  }

  std::vector<KgPackage> packages;
  const json &package_arr = GetArray(doc, "packages", "$");
  for (size_t i = 0; i < package_arr.size(); ++i) {
    std::string path = Indexed("packages", i);
    const json &p = package_arr[i];
    RequireKeys(p, path, {"id", "name", "members"});
    KgPackage package{GetString(p, "id", path), GetString(p, "name", path), {}};
    for (auto &member : GetStrings(p, "members", path)) {
      package.members.insert(std::move(member));
    }
    packages.push_back(std::move(package));
  }

  std::vector<PatternRule> rules;
  const json &rule_arr = GetArray(doc, "patterns", "$");
  for (size_t i = 0; i < rule_arr.size(); ++i) {
    std::string path = Indexed("patterns", i);
    const json &r = rule_arr[i];
    RequireKeys(r, path, {"name", "expression", "entity_type", "priority"});
    if (!r.at("priority").is_number_integer()) {
      throw SchemaError(path + ".priority", "expected integer");
    }
    PatternRule rule;
    rule.name = GetString(r, "name", path);
    rule.expression = GetString(r, "expression", path);
    rule.entity_type = GetString(r, "entity_type", path);
    rule.priority = r.at("priority").get<int>();
    rules.push_back(std::move(rule));
  }

  std::set<std::string> extra;
  for (auto &word : GetStrings(doc, "extra_vocabulary", "$")) {
    extra.insert(std::move(word));
  }
  return BuildKg(std::move(entities), std::move(packages), std::move(rules),
                 std::move(extra), lexicon);
}

KnowledgeGraph LoadKgFile(const std::string &path,
                          const LexiconConfig &lexicon) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("", "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return LoadKg(buffer.str(), lexicon);
}

json SerializeKg(const KnowledgeGraph &kg) {
  json entities = json::array();
  for (const auto &[id, e] : kg.entities) {
    entities.push_back({{"id", e.id},
                        {"type", e.entity_type},
                        {"aliases", e.aliases},
                        {"description", e.description}});
  }
  json packages = json::array();
  for (const auto &[id, p] : kg.packages) {
    packages.push_back(
        {{"id", p.id}, {"name", p.display_name}, {"members", p.members}});
  }
  json patterns = json::array();
  for (const auto &r : kg.rules) {
    patterns.push_back({{"name", r.name},
                        {"expression", r.expression},
                        {"entity_type", r.entity_type},
                        {"priority", r.priority}});
  }
  return {{"entities", entities},
          {"packages", packages},
          {"patterns", patterns},
          {"extra_vocabulary", kg.extra_vocabulary}};
}

std::set<std::string> DeriveVocabulary(const KnowledgeGraph &kg,
                                       const LexiconConfig &lexicon) {
  std::set<std::string> vocabulary = kg.extra_vocabulary;
  vocabulary.insert(std::string(kNumberConstant));
  for (const auto &[id, e] : kg.entities) {
    AddViews(e.id, lexicon, &vocabulary);
    for (const auto &alias : e.aliases) AddViews(alias, lexicon, &vocabulary);
    AddViews(e.description, lexicon, &vocabulary);
  }
  return vocabulary;
}

std::vector<KgPackage> PackagesContainingAll(
    const KnowledgeGraph &kg, const std::set<std::string> &required) {
  for (const auto &id : required) {
    if (!kg.entities.count(id)) throw UnknownEntity(id);
  }
  std::vector<KgPackage> out;
  for (const auto &[id, package] : kg.packages) {
    if (std::includes(package.members.begin(), package.members.end(),
                      required.begin(), required.end())) {
      out.push_back(package);
    }
  }
  return out;
}

std::vector<CoverageRow> CoverageReport(const KnowledgeGraph &kg,
                                        const std::set<std::string> &required) {
  for (const auto &id : required) {
    if (!kg.entities.count(id)) throw UnknownEntity(id);
  }
  std::vector<CoverageRow> rows;
  for (const auto &[id, package] : kg.packages) {
    CoverageRow row{id, 0, {}};
    for (const auto &entity : required) {
      if (package.members.count(entity)) {
        ++row.matched;
      } else {
        row.missing.push_back(entity);
      }
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const CoverageRow &a, const CoverageRow &b) {
                     return a.matched > b.matched;
                   });
  return rows;
}

const char *FindingKindName(FindingKind kind) {
  switch (kind) {
    case FindingKind::kAliasCollision: return "alias_collision";
    case FindingKind::kUnreachableEntity: return "unreachable_entity";
    case FindingKind::kVocabularyDrift: return "vocabulary_drift";
    case FindingKind::kEmptyDescription: return "empty_description";
  }
  return "";
}

ValidationReport ValidateKg(const KnowledgeGraph &kg,
                            const LexiconConfig &lexicon) {
  ValidationReport report;

  std::map<std::string, std::set<std::string>> alias_owners;
  for (const auto &[id, e] : kg.entities) {
    for (const auto &alias : e.aliases) {
      alias_owners[AliasKey(alias, lexicon)].insert(id);
    }
  }
  for (const auto &[alias, owners] : alias_owners) {
    if (owners.size() < 2) continue;
    std::string detail;
    for (const auto &id : owners) {
      if (!detail.empty()) detail += ", ";
      detail += id;
    }
    report.push_back({FindingKind::kAliasCollision, alias,
                      "alias maps to " + detail});
  }

  std::set<std::string> reachable;
  for (const auto &[id, p] : kg.packages) {
    reachable.insert(p.members.begin(), p.members.end());
  }
  for (const auto &[id, e] : kg.entities) {
    if (!reachable.count(id)) {
      report.push_back({FindingKind::kUnreachableEntity, id,
                        "entity belongs to no package"});
    }
  }

  std::set<std::string> recomputed = DeriveVocabulary(kg, lexicon);
  if (recomputed != kg.vocabulary) {
    std::vector<std::string> missing, stale;
    std::set_difference(recomputed.begin(), recomputed.end(),
                        kg.vocabulary.begin(), kg.vocabulary.end(),
                        std::back_inserter(missing));
    std::set_difference(kg.vocabulary.begin(), kg.vocabulary.end(),
                        recomputed.begin(), recomputed.end(),
                        std::back_inserter(stale));
    report.push_back({FindingKind::kVocabularyDrift, "vocabulary",
                      std::to_string(missing.size()) + " missing, " +
                          std::to_string(stale.size()) + " stale"});
  }

  for (const auto &[id, e] : kg.entities) {
    bool blank = std::all_of(e.description.begin(), e.description.end(),
                             [](char c) { return c == ' ' || c == '\t'; });
    if (blank) {
      report.push_back({FindingKind::kEmptyDescription, id,
                        "description is empty"});
    }
  }
  return report;
}

json ValidationReportToJson(const ValidationReport &report) {
  json out = json::array();
  for (const auto &f : report) {
    out.push_back({{"kind", FindingKindName(f.kind)},
                   {"subject", f.subject},
                   {"detail", f.detail}});
  }
  return out;
}

}  // namespace entlink
