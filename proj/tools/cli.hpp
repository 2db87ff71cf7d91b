// Copyright 2026 The ldpol Authors
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

#ifndef LDPOL_TOOLS_CLI_HPP_
#define LDPOL_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace ldpol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitUsage = 64;

// Entry point of the `ldpol` tool. Subcommands: validate-config, run, sweep,
// sensitivity, budget. `args` excludes the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main(int argc, char** argv);

}  // namespace ldpol::cli

#endif  // LDPOL_TOOLS_CLI_HPP_
