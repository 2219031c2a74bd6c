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

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "entlink/cli.h"
#include "json.hpp"
#include "test_util.h"

namespace entlink {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args, const std::string &input = "") {
  args.insert(args.begin(), "entlink");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = RunCli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

struct TempFile {
  explicit TempFile(const std::string &content) {
    std::string pattern =
        (std::filesystem::temp_directory_path() / "entlink-cli-XXXXXX").string();
    int fd = mkstemp(pattern.data());
    ::close(fd);
    path = pattern;
    std::ofstream(path) << content;
  }
  ~TempFile() { std::filesystem::remove(path); }
  std::string path;
};

TEST_SUITE("cli") {
  TEST_CASE("link") {
    auto r = Cli({"link", "--kg", testing::FixtureKgPath(), testing::kRow3});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("GAMING_MEDIUM") != std::string::npos);
    CHECK(r.out.find("timings:") != std::string::npos);

    r = Cli({"link", "--kg", testing::FixtureKgPath(), "--json", testing::kRow3});
    CHECK(r.code == kExitOk);
    CHECK(r.out == ResultJsonText(Run(testing::kRow3, testing::FixtureConfig())));
  }

  TEST_CASE("link failures") {
    CHECK(Cli({"link", "--kg", "/nonexistent.json", "storage"}).code ==
          kExitLoadError);
    TempFile broken("{\"entities\": []}");
    CHECK(Cli({"link", "--kg", broken.path, "storage"}).code == kExitLoadError);
    CHECK(Cli({"link", "--kg", testing::FixtureKgPath(),
               std::string(kMaxInputLength + 1, 'a')})
              .code == kExitInputError);
    CHECK(Cli({"link", "--kg", testing::FixtureKgPath(), "bad \xfe"}).code ==
          kExitInputError);
    CHECK(Cli({"link", "--kg", testing::FixtureKgPath(), "--tau", "2", "x"}).code ==
          kExitInputError);
    CHECK(Cli({}).code == kExitInputError);
  }

  TEST_CASE("validate-kg") {
    auto ok = Cli({"validate-kg", "--kg", testing::FixtureKgPath(), "--lexicon",
                   testing::FixtureLexiconPath()});
    CHECK(ok.code == kExitOk);
    CHECK(ok.out == "ok: 10 entities, 3 packages, no findings\n");

    TempFile findings(R"({
      "entities": [
        {"id": "A", "type": "T", "aliases": ["thing"], "description": ""},
        {"id": "B", "type": "T", "aliases": ["thing"], "description": "blue thing"}
      ],
      "packages": [{"id": "P", "name": "P", "members": ["A", "B"]}],
      "patterns": [],
      "extra_vocabulary": []
    })");
    auto r = Cli({"validate-kg", "--kg", findings.path});
    CHECK(r.code == kExitFindings);
    CHECK(r.out.find("empty_description") != std::string::npos);

    CHECK(Cli({"validate-kg", "--kg", "/nonexistent.json"}).code ==
          kExitLoadError);
  }

  TEST_CASE("repl") {
    auto r = Cli({"repl", "--kg", testing::FixtureKgPath(), "--json"},
                 std::string(testing::kRow1) + "\n\n" + testing::kRow2 + "\n");
    CHECK(r.code == kExitOk);
    std::string expected =
        ResultJsonText(Run(testing::kRow1, testing::FixtureConfig())) +
        ResultJsonText(Run(testing::kRow2, testing::FixtureConfig()));
    CHECK(r.out == expected);
  }

  TEST_CASE("graph path from the environment") {
    ::setenv("ISABEL_KG", testing::FixtureKgPath().c_str(), 1);
    auto r = Cli({"link", testing::kRow2});
    ::unsetenv("ISABEL_KG");
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("GAMING_BEGINNER") != std::string::npos);
  }
}

}  // namespace
}  // namespace entlink
