// Copyright 2026 The Chronos Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHRONOS_CLI_HPP
#define CHRONOS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace chronos::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kScenarioLoad = 2,
  kUnknownObservable = 3,
  kRepresentationMismatch = 4,
  kCheckFailure = 5,
};

/// Runs `chronos <command> [flags]`; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace chronos::cli

#endif  // CHRONOS_CLI_HPP
