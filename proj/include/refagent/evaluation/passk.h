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

#ifndef REFAGENT_EVALUATION_PASSK_H_
#define REFAGENT_EVALUATION_PASSK_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "refagent/llm/chat.h"
#include "refagent/orchestrator/config.h"

namespace refagent::evaluation {

inline constexpr const char* kPassAtKFile = "passk.json";

struct PassAtKResult {
  std::string fqn;
  std::vector<bool> verdicts;  // one per independent candidate
  bool pass = false;
};

nlohmann::json to_json(const std::vector<PassAtKResult>& results, std::size_t k);
std::vector<PassAtKResult> pass_at_k_from_json(const nlohmann::json& j, std::size_t* k = nullptr);

/// Single-agent baseline: for every selected class, asks the backend k times
/// (agent "baseline", phase "oneshot", attempt 1..k) for a refactored class,
/// installs each reply alone, compiles and runs the class's related tests,
/// then restores the workspace. Writes `<journal_root>/passk.json`.
std::vector<PassAtKResult> run_single_agent_baseline(const std::filesystem::path& workspace,
                                                     const orchestrator::EngineConfig& config,
                                                     llm::Backend& backend, std::size_t k,
                                                     const std::filesystem::path& journal_root);

}  // namespace refagent::evaluation

#endif  // REFAGENT_EVALUATION_PASSK_H_
