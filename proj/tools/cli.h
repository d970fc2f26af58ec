// Copyright 2026 The ngramsent Authors
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

#ifndef NGRAMSENT_TOOLS_CLI_H_
#define NGRAMSENT_TOOLS_CLI_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace ngramsent::cli {

// Runs one `ngramsent` invocation. args[0] is the program name. Data goes to
// `out`, diagnostics and training progress to `err`; `in` backs the '-'
// input path. Returns the process exit code.
int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace ngramsent::cli

#endif  // NGRAMSENT_TOOLS_CLI_H_
