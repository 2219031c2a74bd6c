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
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "entlink/error.h"
#include "entlink/kg.h"
#include "test_util.h"

namespace entlink {
namespace {

using nlohmann::json;

json FixtureDoc() { return SerializeKg(testing::FixtureKg()); }

const LexiconConfig &Lexicon() { return testing::FixtureSnapshot()->lexicon; }

std::vector<std::string> Ids(const std::vector<KgPackage> &packages) {
  std::vector<std::string> out;
  for (const auto &p : packages) out.push_back(p.id);
  return out;
}

TEST_SUITE("kg") {
  TEST_CASE("fixture loads with ten entities and three packages") {
    const KnowledgeGraph &kg = testing::FixtureKg();
    CHECK(kg.entities.size() == 10);
    CHECK(kg.packages.size() == 3);
    CHECK(kg.packages.at("GAMING_ADVANCED").display_name == "Gaming advanced");
    CHECK(kg.vocabulary.count("<NUM>"));
    CHECK(kg.vocabulary.count("storage"));
    CHECK(kg.vocabulary.count("computer"));  // extra vocabulary
    CHECK_FALSE(kg.vocabulary.count("shoes"));
    CHECK(kg.EntityTypes() ==
          std::set<std::string>{"CPU", "GRAPHIC", "PRODUCT", "RAM", "STORAGE"});
    // Rules come back ordered by priority.
    for (size_t i = 1; i < kg.rules.size(); ++i) {
      CHECK(kg.rules[i - 1].priority < kg.rules[i].priority);
    }
  }

  TEST_CASE("dangling package member") {
    json doc = FixtureDoc();
    doc["packages"][0]["members"].push_back("CPU_I9");
    try {
      LoadKg(doc.dump(), Lexicon());
      FAIL("expected DanglingReference");
    } catch (const DanglingReference &e) {
      CHECK(e.path() == "packages[0].members");
      CHECK(std::string(e.what()).find("CPU_I9") != std::string::npos);
    }
  }

  TEST_CASE("empty entities with a package") {
    json doc = FixtureDoc();
    doc["entities"] = json::array();
    CHECK_THROWS_AS(LoadKg(doc.dump(), Lexicon()), DanglingReference);
  }

  TEST_CASE("schema errors name the path") {
    json doc = FixtureDoc();
    doc["entities"][2].erase("description");
    try {
      LoadKg(doc.dump(), Lexicon());
      FAIL("expected SchemaError");
    } catch (const SchemaError &e) {
      CHECK(e.path() == "entities[2].description");
    }

    doc = FixtureDoc();
    doc["entities"][0]["color"] = "red";
    CHECK_THROWS_AS(LoadKg(doc.dump(), Lexicon()), SchemaError);

    doc = FixtureDoc();
    doc["patterns"][0]["priority"] = "high";
    CHECK_THROWS_AS(LoadKg(doc.dump(), Lexicon()), SchemaError);

    doc = FixtureDoc();
    doc["entities"][0]["aliases"] = {""};
    CHECK_THROWS_AS(LoadKg(doc.dump(), Lexicon()), SchemaError);

    doc = FixtureDoc();
    doc["entities"][0]["id"] = "cpu_i3";
    CHECK_THROWS_AS(LoadKg(doc.dump(), Lexicon()), SchemaError);

    doc = FixtureDoc();
    doc.erase("extra_vocabulary");
    CHECK_THROWS_AS(LoadKg(doc.dump(), Lexicon()), SchemaError);

    CHECK_THROWS_AS(LoadKg("{not json", Lexicon()), SchemaError);
    CHECK_THROWS_AS(LoadKg("[]", Lexicon()), SchemaError);
  }

  TEST_CASE("duplicate ids and priorities") {
    json doc = FixtureDoc();
    doc["entities"][1]["id"] = doc["entities"][0]["id"];
    CHECK_THROWS_AS(LoadKg(doc.dump(), Lexicon()), DuplicateId);

    doc = FixtureDoc();
    doc["packages"][0]["id"] = "CPU_I3";  // ids are graph-wide
    CHECK_THROWS_AS(LoadKg(doc.dump(), Lexicon()), DuplicateId);

    doc = FixtureDoc();
    doc["patterns"][1]["priority"] = doc["patterns"][0]["priority"];
    CHECK_THROWS_AS(LoadKg(doc.dump(), Lexicon()), DuplicateId);
  }

  TEST_CASE("pattern compile error") {
    json doc = FixtureDoc();
    doc["patterns"][3]["expression"] = "graphic (card";
    try {
      LoadKg(doc.dump(), Lexicon());
      FAIL("expected PatternCompileError");
    } catch (const PatternCompileError &e) {
      CHECK(e.path() == "patterns[3].expression");
    }
  }

  TEST_CASE("packages containing all") {
    const KnowledgeGraph &kg = testing::FixtureKg();
    CHECK(Ids(PackagesContainingAll(kg, {"STORAGE_1TB", "GRAPHIC_3080"})) ==
          std::vector<std::string>{"GAMING_ADVANCED"});
    CHECK(Ids(PackagesContainingAll(kg, {"STORAGE_512GB", "RAM_8GB"})) ==
          std::vector<std::string>{"GAMING_BEGINNER", "GAMING_MEDIUM"});
    CHECK(Ids(PackagesContainingAll(kg, {"STORAGE_512GB", "RAM_8GB", "CPU_I5"})) ==
          std::vector<std::string>{"GAMING_MEDIUM"});
    CHECK_THROWS_AS(PackagesContainingAll(kg, {"CPU_I9"}), UnknownEntity);
  }

  TEST_CASE("coverage report") {
    const KnowledgeGraph &kg = testing::FixtureKg();
    auto rows = CoverageReport(kg, {"STORAGE_1TB", "CPU_I3"});
    REQUIRE(rows.size() == 3);
    // Brute force: advanced holds STORAGE_1TB, beginner holds CPU_I3, medium
    // holds neither.
    CHECK(rows[0] == CoverageRow{"GAMING_ADVANCED", 1, {"CPU_I3"}});
    CHECK(rows[1] == CoverageRow{"GAMING_BEGINNER", 1, {"STORAGE_1TB"}});
    CHECK(rows[2] == CoverageRow{"GAMING_MEDIUM", 0, {"CPU_I3", "STORAGE_1TB"}});

    rows = CoverageReport(kg, {"RAM_8GB"});
    CHECK(rows[0].matched == 1);
    CHECK(rows[1].matched == 1);
    CHECK(rows[2] == CoverageRow{"GAMING_ADVANCED", 0, {"RAM_8GB"}});

    rows = CoverageReport(kg, {"CPU_I7", "RAM_16GB"});
    CHECK(rows[0] == CoverageRow{"GAMING_ADVANCED", 2, {}});

    CHECK_THROWS_AS(CoverageReport(kg, {"NOPE"}), UnknownEntity);
  }

  TEST_CASE("validation of the fixture is clean") {
    CHECK(ValidateKg(testing::FixtureKg(), Lexicon()).empty());
  }

  TEST_CASE("validation findings") {
    json doc = FixtureDoc();
    doc["entities"][3]["aliases"].push_back("Card");
    doc["entities"][4]["aliases"].push_back("card");
    KnowledgeGraph kg = LoadKg(doc.dump(), Lexicon());
    auto report = ValidateKg(kg, Lexicon());
    REQUIRE(report.size() == 1);
    CHECK(report[0].kind == FindingKind::kAliasCollision);
    CHECK(report[0].subject == "card");

    doc = FixtureDoc();
    doc["entities"].push_back({{"id", "MOUSE_1"},
                               {"type", "MOUSE"},
                               {"aliases", json::array()},
                               {"description", "wireless mouse"}});
    report = ValidateKg(LoadKg(doc.dump(), Lexicon()), Lexicon());
    REQUIRE(report.size() == 1);
    CHECK(report[0].kind == FindingKind::kUnreachableEntity);
    CHECK(report[0].subject == "MOUSE_1");

    doc = FixtureDoc();
    doc["entities"][0]["description"] = "";
    report = ValidateKg(LoadKg(doc.dump(), Lexicon()), Lexicon());
    REQUIRE(report.size() == 1);
    CHECK(report[0].kind == FindingKind::kEmptyDescription);

    kg = testing::FixtureKg();
    kg.vocabulary.erase("storage");
    report = ValidateKg(kg, Lexicon());
    REQUIRE(report.size() == 1);
    CHECK(report[0].kind == FindingKind::kVocabularyDrift);
  }
}

TEST_SUITE("kg properties") {
  TEST_CASE("packages_containing_all matches brute force on every subset") {
    const KnowledgeGraph &kg = testing::FixtureKg();
    std::vector<std::string> ids;
    for (const auto &[id, e] : kg.entities) ids.push_back(id);
    REQUIRE(ids.size() == 10);
    for (unsigned mask = 1; mask < (1u << ids.size()); ++mask) {
      std::set<std::string> required;
      for (size_t i = 0; i < ids.size(); ++i) {
        if (mask & (1u << i)) required.insert(ids[i]);
      }
      auto got = Ids(PackagesContainingAll(kg, required));
      REQUIRE(got == testing::BruteForceCovering(kg, required));
      // Anti-monotone: adding any entity never enlarges the result.
      for (size_t i = 0; i < ids.size(); ++i) {
        if (mask & (1u << i)) continue;
        std::set<std::string> bigger = required;
        bigger.insert(ids[i]);
        auto more = Ids(PackagesContainingAll(kg, bigger));
        REQUIRE(std::includes(got.begin(), got.end(), more.begin(), more.end()));
      }
    }
  }

  TEST_CASE("round trip for random graphs") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 50; ++i) {
      KnowledgeGraph kg = testing::RandomKg(rng, Lexicon());
      std::string text = SerializeKg(kg).dump();
      KnowledgeGraph again = LoadKg(text, Lexicon());
      CHECK(again == kg);
      CHECK(SerializeKg(again).dump() == text);
    }
  }
}

}  // namespace
}  // namespace entlink
