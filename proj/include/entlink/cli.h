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

#ifndef ENTLINK_CLI_H_
#define ENTLINK_CLI_H_

#include <istream>
#include <ostream>

namespace entlink {

// Exit codes shared by the subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitLoadError = 2;
inline constexpr int kExitInputError = 3;

// Entry point for the `entlink` tool: link, repl, serve, validate-kg.
int RunCli(int argc, const char *const *argv, std::istream &in,
           std::ostream &out, std::ostream &err);

}  // namespace entlink

#endif  // ENTLINK_CLI_H_
