// Copyright 2026 The Consilience Authors
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

#ifndef CONSILIENCE_COMMANDS_HPP_
#define CONSILIENCE_COMMANDS_HPP_

#include <iosfwd>

namespace consilience {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitDegenerate = 3,
  kExitUsage = 4,
};

// Entry point of the `consilience` command-line tool. Subcommands:
// analyze, null, enumerate, critical, compare, plot. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace consilience

#endif  // CONSILIENCE_COMMANDS_HPP_
