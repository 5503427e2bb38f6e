// Copyright 2026 The loadcluster Authors.
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

#ifndef LOADCLUSTER_CLI_H_
#define LOADCLUSTER_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace loadcluster {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (without the program name) and returns its exit
// code. Human-readable output goes to `out`, diagnostics to `err`; artifacts
// are written under the configured output directory.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Verification suite names accepted by `verify`.
const std::vector<std::string>& VerifySuites();

}  // namespace loadcluster

#endif  // LOADCLUSTER_CLI_H_
