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

#ifndef REFAGENT_ORCHESTRATOR_AGENTS_H_
#define REFAGENT_ORCHESTRATOR_AGENTS_H_

#include <optional>
#include <string>
#include <vector>

#include "refagent/depgraph/graph.h"
#include "refagent/llm/chat.h"
#include "refagent/llm/extract.h"
#include "refagent/orchestrator/config.h"
#include "refagent/orchestrator/prompts.h"
#include "refagent/source/design_model.h"
#include "refagent/toolchain/logs.h"

namespace refagent::orchestrator {

/// What the agents of one session share.
struct AgentEnv {
  llm::Backend& backend;
  llm::Transcript& transcript;
  const EngineConfig& config;
  const source::DesignModel& model;
  const depgraph::DependencyGraph& graph;
};

struct PlanResult {
  std::optional<llm::RefactoringPlan> plan;  // nullopt: the session is skipped
  std::string skip_reason;
  int attempts = 0;
  /// Entries whose identifier does not resolve against the target.
  std::vector<llm::PlanEntry> dropped;
  /// Entries aimed at other classes; recorded, never applied.
  std::vector<llm::PlanEntry> advisory;
  std::vector<std::string> warnings;
};

/// Answers one planner tool call from the design model.
std::string run_planner_tool(const AgentEnv& env, const llm::ToolCall& call);

/// Sorts plan entries into kept, dropped and advisory.
void resolve_plan(const source::DesignModel& model, const std::string& fqn, PlanResult& result,
                  std::vector<llm::PlanEntry> entries);

/// Prompts the planner (serving tool calls for up to max_tool_rounds), then
/// parses and resolves the plan. Unparseable replies are re-prompted with
/// the parse error, up to max_plan_attempts in total.
PlanResult plan_refactoring(const AgentEnv& env, const ClassContext& ctx);

struct Candidate {
  std::string response;
  std::optional<std::string> source;  // nullopt: no code block in the reply
};

/// One generator call; `attempt` numbers the generator calls of a session.
Candidate generate_candidate(const AgentEnv& env, const ClassContext& ctx,
                             const llm::RefactoringPlan& plan, const GenerationRequest& request,
                             int attempt);

/// Error digest: grouped by file (sorted), line-sorted, identical records
/// folded with a count, cut to `token_budget`. When `env` is given and LLM
/// summaries are enabled, the model's summary is appended to the digest.
std::string summarize_errors(const std::vector<toolchain::Diagnostic>& diagnostics,
                             long token_budget, const AgentEnv* env = nullptr, int attempt = 1,
                             const std::string& fqn = "");

/// Failing tests with their messages and trace excerpts, cut to budget.
std::string summarize_test_failures(const toolchain::TestOutcome& outcome, long token_budget);

}  // namespace refagent::orchestrator

#endif  // REFAGENT_ORCHESTRATOR_AGENTS_H_
