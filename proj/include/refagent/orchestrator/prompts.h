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

#ifndef REFAGENT_ORCHESTRATOR_PROMPTS_H_
#define REFAGENT_ORCHESTRATOR_PROMPTS_H_

#include <string>
#include <vector>

#include "refagent/depgraph/bundle.h"
#include "refagent/depgraph/graph.h"
#include "refagent/llm/chat.h"
#include "refagent/llm/extract.h"
#include "refagent/metrics/metrics.h"
#include "refagent/orchestrator/config.h"

namespace refagent::orchestrator {

/// Everything the prompts may show about one target class.
struct ClassContext {
  std::string fqn;
  depgraph::CodeBundle bundle;
  metrics::ClassMetrics metrics;
  /// Main-source dependency edges touching the target, as display lines.
  std::vector<std::string> outgoing;
  std::vector<std::string> incoming;
};

ClassContext make_class_context(const source::DesignModel& model,
                                const depgraph::DependencyGraph& graph, const std::string& fqn,
                                long token_budget);

// Section titles; the ablation switches drop whole sections.
inline constexpr const char* kTargetSection = "## Target class";
inline constexpr const char* kDependencySection = "## Dependency graph";
inline constexpr const char* kDependentsSection = "## Dependent classes";
inline constexpr const char* kMetricsSection = "## Code metrics";
inline constexpr const char* kFormatSection = "## Output format";

std::string render_metrics(const metrics::ClassMetrics& m);
std::string render_dependencies(const ClassContext& ctx);
std::string render_dependents(const depgraph::CodeBundle& bundle);
std::string render_plan(const llm::RefactoringPlan& plan);

std::vector<llm::ChatMessage> planner_messages(const ClassContext& ctx, const Ablation& ablation);

/// Tool declarations offered to the planner, minus the ablated ones.
std::vector<llm::ToolSpec> planner_tools(const Ablation& ablation);

enum class GenerationKind { kInitial, kCompileFix, kTestFix };

const char* to_string(GenerationKind kind);

struct GenerationRequest {
  GenerationKind kind = GenerationKind::kInitial;
  std::string feedback;            // error summary or failing tests
  std::string previous_candidate;  // empty for the initial request
};

/// The plan is restated in every variant.
std::vector<llm::ChatMessage> generator_messages(const ClassContext& ctx,
                                                 const llm::RefactoringPlan& plan,
                                                 const GenerationRequest& request,
                                                 const Ablation& ablation);

}  // namespace refagent::orchestrator

#endif  // REFAGENT_ORCHESTRATOR_PROMPTS_H_
