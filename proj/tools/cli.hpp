// Copyright 2026 The PHIA Authors
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


#ifndef PHIA_TOOLS_CLI_HPP_
#define PHIA_TOOLS_CLI_HPP_

#include <iosfwd>
#include <span>
#include <string>

namespace phia::cli {

// Exit statuses. CLI11 reports its own parse failures (unknown flag,
// missing value) with codes >= 100.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidArgument = 2;
inline constexpr int kExitBadProblemFile = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitVerifyBelowThreshold = 5;

/// Runs the `phia` command line. `args` excludes the program name.
/// Results go to `out`, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err);

}  // namespace phia::cli

#endif  // PHIA_TOOLS_CLI_HPP_
