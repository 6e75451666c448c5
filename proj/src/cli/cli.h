// src/cli/cli.h

// Copyright 2026  The phonefuse Authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef PHONEFUSE_CLI_CLI_H_
#define PHONEFUSE_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace phonefuse {

/// Exit codes of the phonefuse binary.
enum ExitCode { kExitOk = 0, kExitRuntime = 1, kExitUsage = 2 };

/// Runs one phonefuse command.  `args` excludes the program name.
/// Configuration errors exit like usage errors; everything else that
/// fails after parsing is a runtime failure.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace phonefuse

#endif  // PHONEFUSE_CLI_CLI_H_
