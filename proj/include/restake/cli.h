// Copyright 2026 The Restake Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RESTAKE_CLI_H_
#define RESTAKE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace restake::cli {

// Exit codes.
inline constexpr int kOk = 0;       // holds, or the query was answered
inline constexpr int kFails = 1;    // condition fails; a witness is printed
inline constexpr int kUsage = 2;    // bad command line or bad model
inline constexpr int kRefused = 3;  // enumeration cap exceeded

// Runs one command. `args` excludes the program name. Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace restake::cli

#endif  // RESTAKE_CLI_H_
