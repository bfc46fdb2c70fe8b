// Copyright 2026 The hypercollapse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYPERCOLLAPSE_TOOLS_CLI_HPP_
#define HYPERCOLLAPSE_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace hypercollapse::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kRuntimeError = 3,
};

// Runs the hcollapse command line. `args` excludes the program name. Data
// goes to the --out file (or `out`), diagnostics and stdout manifests to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypercollapse::cli

#endif  // HYPERCOLLAPSE_TOOLS_CLI_HPP_
