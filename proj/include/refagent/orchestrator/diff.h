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

#ifndef REFAGENT_ORCHESTRATOR_DIFF_H_
#define REFAGENT_ORCHESTRATOR_DIFF_H_

#include <string>

namespace refagent::orchestrator {

/// Line-based unified diff (LCS alignment) with `context` lines around each
/// change. Empty when the texts are equal.
std::string unified_diff(const std::string& before, const std::string& after,
                         const std::string& path, int context = 3);

/// Applies a diff produced by unified_diff to `before`. Throws Error when a
/// hunk does not match.
std::string apply_unified_diff(const std::string& before, const std::string& diff);

}  // namespace refagent::orchestrator

#endif  // REFAGENT_ORCHESTRATOR_DIFF_H_
