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

#ifndef REFAGENT_ORCHESTRATOR_PROJECT_H_
#define REFAGENT_ORCHESTRATOR_PROJECT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "refagent/llm/chat.h"
#include "refagent/orchestrator/config.h"
#include "refagent/orchestrator/session.h"
#include "refagent/toolchain/build.h"
#include "refagent/toolchain/testgen.h"

namespace refagent::orchestrator {

inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kAnalysisBeforeFile = "analysis_before.json";
inline constexpr const char* kAnalysisAfterFile = "analysis_after.json";

/// Fisher-Yates over a mt19937_64 seeded with `seed`.
std::vector<std::string> seeded_permutation(std::vector<std::string> items, std::uint64_t seed);

struct ProjectReport {
  std::uint64_t seed = 0;
  std::vector<std::string> order;
  std::vector<SessionVerdict> sessions;
  std::map<std::string, int> tallies;  // COMMITTED / REVERTED / SKIPPED
  nlohmann::json analysis_before;
  nlohmann::json analysis_after;

  nlohmann::json to_json() const;
};

/// Design metrics, QMOOD attributes and smells of the whole project.
nlohmann::json analyze_workspace(const std::filesystem::path& workspace,
                                 const EngineConfig& config);

/// The generator selected by `config.test_generator`, or null for "none".
std::unique_ptr<toolchain::TestGenerator> make_test_generator(const EngineConfig& config);

/// Throws BaselineFailure unless the project compiles and its whole test
/// suite passes.
void check_baseline(const std::filesystem::path& workspace, const toolchain::BuildAdapter& adapter);

/// Checks the pristine project compiles and passes its tests (else
/// BaselineFailure), then runs one session per selected class in seeded
/// order. Committed changes stay in place for later sessions. Holds an
/// exclusive lock on `<workspace>/.refagent` for the duration.
ProjectReport run_project(const std::filesystem::path& workspace, const EngineConfig& config,
                          llm::Backend& backend, const std::filesystem::path& journal_root);

/// Prepares a journal directory for a new run. A non-empty directory is
/// only cleared when it holds a previous run's manifest.
void reset_journal(const std::filesystem::path& journal_root);

}  // namespace refagent::orchestrator

#endif  // REFAGENT_ORCHESTRATOR_PROJECT_H_
