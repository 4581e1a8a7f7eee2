// Copyright 2026 The RefAgent Authors
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

#ifndef REFAGENT_TOOLCHAIN_PROCESS_H_
#define REFAGENT_TOOLCHAIN_PROCESS_H_

#include <filesystem>
#include <string>
#include <vector>

namespace refagent::toolchain {

struct CommandResult {
  int exit_code = 0;  // 128 + signal when killed by a signal
  std::string output;  // stdout and stderr interleaved
  double duration_seconds = 0;
};

/// Runs argv[0] (looked up on PATH) in `cwd` with stdin closed. The child
/// gets its own process group, which is killed when `timeout_seconds`
/// elapses. Throws ToolError when the program cannot be started or times out.
CommandResult run_command(const std::vector<std::string>& argv, const std::filesystem::path& cwd,
                          int timeout_seconds);

/// True when `program` names an executable file directly or via PATH.
bool program_available(const std::string& program);

}  // namespace refagent::toolchain

#endif  // REFAGENT_TOOLCHAIN_PROCESS_H_
