// Copyright 2026 The DWR Compiler Authors
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

#ifndef DWR_CLI_H
#define DWR_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace dwr {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitUsage = 2,
};

/// Runs one command line. `args` excludes the program name. Subcommands: compile, verify, metrics,
/// graph-check, demo-cx.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Pauli map and correction of the measurement-based CX, as printed by `demo-cx`.
std::string cx_demo_text();

}  // namespace dwr

#endif
