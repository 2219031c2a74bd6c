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

#include "entlink/assembler.h"

#include "entlink/error.h"

namespace entlink {

AssemblyResult Assemble(const KnowledgeGraph &kg,
                        const std::vector<LinkedEntity> &linked) {
  if (linked.empty()) throw EmptyLinkSet();
  AssemblyResult result;
  for (const LinkedEntity &link : linked) result.required.insert(link.entity_id);

  for (const KgPackage &package : PackagesContainingAll(kg, result.required)) {
    result.matched_packages.push_back(
        {package.id, package.display_name,
         {package.members.begin(), package.members.end()}});
  }
  if (result.matched_packages.empty()) {
    result.diagnostics = CoverageReport(kg, result.required);
  }
  return result;
}

}  // namespace entlink
