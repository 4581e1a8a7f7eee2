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

#include "refagent/orchestrator/prompts.h"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <set>

namespace refagent::orchestrator {

namespace {

std::string number(double v) {
  if (std::floor(v) == v && std::fabs(v) < 1e15) return fmt::format("{}", static_cast<long long>(v));
  return fmt::format("{:.3f}", v);
}

std::string java_fence(const std::string& code) {
  std::string body = code;
  while (!body.empty() && body.back() == '\n') body.pop_back();
  return "```java\n" + body + "\n```\n";
}

void edge_lines(const std::vector<depgraph::Edge>& edges, bool outgoing,
                const source::DesignModel& model, std::vector<std::string>& out) {
  std::map<std::string, std::set<std::string>> kinds;
  for (const auto& e : edges) {
    const std::string& other = outgoing ? e.to : e.from;
    if (!model.contains(other) || model.is_test(other)) continue;
    kinds[other].insert(depgraph::to_string(e.kind));
  }
  for (const auto& [other, ks] : kinds) {
    std::string line = other + " (";
    bool first = true;
    for (const auto& k : ks) {
      line += (first ? "" : ", ") + k;
      first = false;
    }
    out.push_back(line + ")");
  }
}

const char* kPlannerSystem =
    "You are the planner of a refactoring team working on a Java project. You study one target "
    "class and decide which of its code regions to refactor and how. A generator agent will "
    "follow your instructions literally, so make each one concrete and self-contained.";

const char* kGeneratorSystem =
    "You are the refactoring generator of a refactoring team working on a Java project. You "
    "rewrite one target class by applying the planner's refactoring plan. The result must "
    "compile, keep the behaviour of the original class, and keep every public member that other "
    "classes or tests use.";

const char* kFormat =
    "Reply with the refactoring plan as a JSON array inside one ```json fenced block. Each "
    "element is an object with the fields:\n"
    "- \"region_kind\": one of \"class\", \"method\", \"field\", \"variable\"\n"
    "- \"identifier\": the name of the class, method, field or variable\n"
    "- \"line_range\": [first_line, last_line] of the region in the target class\n"
    "- \"refactoring_type\": the refactoring to apply, e.g. \"Extract Method\"\n"
    "- \"instruction\": what the generator must do, in one or two sentences\n"
    "Only plan changes to the target class.\n";

}  // namespace

ClassContext make_class_context(const source::DesignModel& model,
                                const depgraph::DependencyGraph& graph, const std::string& fqn,
                                long token_budget) {
  ClassContext ctx;
  ctx.fqn = fqn;
  ctx.bundle = depgraph::collect_bundle(model, graph, fqn, token_budget);
  ctx.metrics = metrics::compute_class_metrics(model, graph, fqn);
  edge_lines(graph.outgoing(fqn), true, model, ctx.outgoing);
  edge_lines(graph.incoming(fqn), false, model, ctx.incoming);
  return ctx;
}

std::string render_metrics(const metrics::ClassMetrics& m) {
  std::string out = "| metric | value |\n|---|---|\n";
  for (const auto& col : metrics::class_columns()) {
    if (col == "fqn") continue;
    out += "| " + col + " | " + number(m.values.get(col)) + " |\n";
  }
  if (!m.methods.empty()) {
    out += "\n| method | cyclomatic complexity | lines | parameters |\n|---|---|---|---|\n";
    for (const auto& mm : m.methods) {
      out += fmt::format("| {} | {} | {} | {} |\n", mm.signature, mm.cc, mm.loc, mm.param_count);
    }
  }
  return out;
}

std::string render_dependencies(const ClassContext& ctx) {
  std::string out = "Classes " + ctx.fqn + " depends on:\n";
  if (ctx.outgoing.empty()) out += "- none\n";
  for (const auto& l : ctx.outgoing) out += "- " + l + "\n";
  out += "Classes that depend on " + ctx.fqn + ":\n";
  if (ctx.incoming.empty()) out += "- none\n";
  for (const auto& l : ctx.incoming) out += "- " + l + "\n";
  return out;
}

std::string render_dependents(const depgraph::CodeBundle& bundle) {
  if (bundle.dependent_order.empty()) return "No dependent class sources are included.\n";
  std::string out;
  for (const auto& fqn : bundle.dependent_order) {
    out += "### " + fqn + "\n" + java_fence(bundle.dependent_sources.at(fqn));
  }
  if (bundle.truncated) out += "Further dependents were left out to stay within the token budget.\n";
  return out;
}

std::string render_plan(const llm::RefactoringPlan& plan) {
  std::string out;
  int n = 0;
  for (const auto& e : plan.entries) {
    out += fmt::format("{}. {} on {} `{}`", ++n, e.refactoring_type, llm::to_string(e.region_kind),
                       e.identifier);
    if (e.line_range) out += fmt::format(" (lines {}-{})", e.line_range->start, e.line_range->end);
    out += ": " + e.instruction + "\n";
  }
  return out;
}

std::vector<llm::ChatMessage> planner_messages(const ClassContext& ctx, const Ablation& ablation) {
  std::string user = std::string(kTargetSection) + " " + ctx.fqn + "\n" +
                     java_fence(ctx.bundle.target_source) + "\n";
  if (ablation.depgraph) user += std::string(kDependencySection) + "\n" + render_dependencies(ctx) + "\n";
  if (ablation.codesearch) user += std::string(kDependentsSection) + "\n" + render_dependents(ctx.bundle) + "\n";
  if (ablation.context) user += std::string(kMetricsSection) + "\n" + render_metrics(ctx.metrics) + "\n";
  user += std::string(kFormatSection) + "\n" + kFormat;
  return {{"system", kPlannerSystem}, {"user", user}};
}

std::vector<llm::ToolSpec> planner_tools(const Ablation& ablation) {
  const nlohmann::json fqn_param = {
      {"type", "object"},
      {"properties", {{"fqn", {{"type", "string"}, {"description", "Fully qualified class name"}}}}},
      {"required", {"fqn"}}};
  std::vector<llm::ToolSpec> tools;
  if (ablation.depgraph) {
    tools.push_back({"dependency_graph",
                     "Class-level dependencies of a project class: what it uses and what uses it.",
                     fqn_param});
  }
  if (ablation.context) {
    tools.push_back({"code_metrics", "Design and method metrics of a project class.", fqn_param});
  }
  if (ablation.codesearch) {
    tools.push_back({"code_search", "Source code of a project class.", fqn_param});
  }
  return tools;
}

const char* to_string(GenerationKind kind) {
  switch (kind) {
    case GenerationKind::kInitial: return "initial";
    case GenerationKind::kCompileFix: return "compile_fix";
    case GenerationKind::kTestFix: return "test_fix";
  }
  return "initial";
}

std::vector<llm::ChatMessage> generator_messages(const ClassContext& ctx,
                                                 const llm::RefactoringPlan& plan,
                                                 const GenerationRequest& request,
                                                 const Ablation& ablation) {
  std::string user = "## Refactoring plan\n" + render_plan(plan) + "\n";
  user += std::string(kTargetSection) + " " + ctx.fqn + " (original)\n" +
          java_fence(ctx.bundle.target_source) + "\n";
  if (ablation.codesearch) user += std::string(kDependentsSection) + "\n" + render_dependents(ctx.bundle) + "\n";
  if (ablation.context) user += std::string(kMetricsSection) + "\n" + render_metrics(ctx.metrics) + "\n";
  switch (request.kind) {
    case GenerationKind::kInitial:
      user += "## Task\nApply every step of the refactoring plan to the target class.";
      break;
    case GenerationKind::kCompileFix:
      user += "## Previous candidate\n" + java_fence(request.previous_candidate) + "\n";
      user += "## Compilation errors\n" + request.feedback + "\n\n";
      user += "## Task\nThe previous candidate does not compile. Fix these errors. The refactoring "
              "plan above stays the guiding principle: do not drop its steps to make the code "
              "compile.";
      break;
    case GenerationKind::kTestFix:
      user += "## Previous candidate\n" + java_fence(request.previous_candidate) + "\n";
      user += "## Test failures\n" + request.feedback + "\n\n";
      user += "## Task\nThe previous candidate compiles but breaks these tests. Restore the "
              "behaviour they expect while still following the refactoring plan above.";
      break;
  }
  user += " Reply with the complete refactored class in one ```java fenced block.\n";
  return {{"system", kGeneratorSystem}, {"user", user}};
}

}  // namespace refagent::orchestrator
