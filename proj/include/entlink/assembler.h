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

#ifndef ENTLINK_ASSEMBLER_H_
#define ENTLINK_ASSEMBLER_H_

#include <set>
#include <string>
#include <vector>

#include "entlink/kg.h"
#include "entlink/linking.h"

namespace entlink {

struct MatchedPackage {
  std::string id;
  std::string display_name;
  std::vector<std::string> members;  // every member, sorted by id

  bool operator==(const MatchedPackage &) const = default;
};

struct AssemblyResult {
  std::vector<MatchedPackage> matched_packages;  // sorted by id
  std::set<std::string> required;
  std::vector<CoverageRow> diagnostics;  // only when nothing matched

  bool operator==(const AssemblyResult &) const = default;
};

// Finds the packages covering every linked entity. Duplicate ids collapse.
// Throws EmptyLinkSet when `linked` is empty.
AssemblyResult Assemble(const KnowledgeGraph &kg,
                        const std::vector<LinkedEntity> &linked);

}  // namespace entlink

#endif  // ENTLINK_ASSEMBLER_H_
