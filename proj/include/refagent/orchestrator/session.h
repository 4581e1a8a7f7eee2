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

#ifndef REFAGENT_ORCHESTRATOR_SESSION_H_
#define REFAGENT_ORCHESTRATOR_SESSION_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "refagent/llm/chat.h"
#include "refagent/orchestrator/config.h"
#include "refagent/orchestrator/prompts.h"
#include "refagent/toolchain/build.h"
#include "refagent/toolchain/testgen.h"

namespace refagent::orchestrator {

enum class Phase { kPlanning, kGenerating, kCompiling, kTesting, kCommitted, kReverted, kSkipped };

const char* to_string(Phase phase);
Phase phase_from_string(const std::string& s);
bool is_terminal(Phase phase);

/// Contents of every workspace file (outside .refagent/, target/, .git/).
class Snapshot {
 public:
  static Snapshot take(const std::filesystem::path& workspace);
  /// Rewrites changed files, recreates deleted ones and removes files (and
  /// the directories holding them) that did not exist when taken.
  void restore(const std::filesystem::path& workspace) const;
  const std::string& digest() const { return digest_; }
  const std::map<std::string, std::string>& files() const { return files_; }

 private:
  std::map<std::string, std::string> files_;
  std::string digest_;
};

enum class AttemptVerdict { kCompileFail, kTestFail, kPass };

const char* to_string(AttemptVerdict v);

struct AttemptRecord {
  int index = 0;  // generator call number within the session, from 1
  GenerationKind kind = GenerationKind::kInitial;
  std::optional<std::string> candidate_source;  // nullopt: no code block
  AttemptVerdict verdict = AttemptVerdict::kCompileFail;
  std::string error_summary;
  std::optional<toolchain::BuildOutcome> compile;
  std::optional<toolchain::TestOutcome> tests;
};

nlohmann::json to_json(const AttemptRecord& a);

struct SessionVerdict {
  std::string fqn;
  Phase verdict = Phase::kSkipped;
  std::string reason;
  int compile_attempts = 0;
  int test_attempts = 0;
  std::vector<std::string> phase_history;
  std::string target_file;  // relative to the workspace
  std::string snapshot_digest;
  std::string final_digest;
  std::vector<std::string> tests_run;  // empty: full suite
  std::vector<std::string> generated_tests;
  std::vector<std::string> warnings;
};

nlohmann::json to_json(const SessionVerdict& v);
SessionVerdict session_verdict_from_json(const nlohmann::json& j);

struct SessionTools {
  llm::Backend& backend;
  const toolchain::BuildAdapter& adapter;
  toolchain::TestGenerator* generator = nullptr;  // null: no test generation
};

/// Per-class journal files.
inline constexpr const char* kPlanFile = "plan.json";
inline constexpr const char* kDiffFile = "diff.patch";
inline constexpr const char* kVerdictFile = "verdict.json";
inline constexpr const char* kMetricsBeforeFile = "metrics_before.json";
inline constexpr const char* kMetricsAfterFile = "metrics_after.json";
inline constexpr const char* kTranscriptFile = "transcript.json";
std::string attempt_file(int index);

/// Plans, generates and validates a refactoring of one top-level class,
/// writing its records under `<journal_root>/<fqn>/`. Only the class's own
/// file is ever rewritten; anything short of a passing candidate leaves the
/// workspace byte-identical to how the session found it.
SessionVerdict run_class_session(const std::filesystem::path& workspace, const std::string& fqn,
                                 const EngineConfig& config, const SessionTools& tools,
                                 const std::filesystem::path& journal_root);

/// Class metrics, design aggregate, QMOOD vector and the project's smells.
nlohmann::json snapshot_metrics(const source::DesignModel& model,
                                const depgraph::DependencyGraph& graph, const std::string& fqn,
                                const EngineConfig& config);

}  // namespace refagent::orchestrator

#endif  // REFAGENT_ORCHESTRATOR_SESSION_H_
