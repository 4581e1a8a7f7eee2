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

#include "refagent/orchestrator/agents.h"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <tuple>

#include "refagent/error.h"
#include "refagent/llm/tokens.h"
#include "refagent/metrics/metrics.h"

namespace refagent::orchestrator {

namespace {

std::string simple_name(const std::string& fqn) {
  auto dot = fqn.rfind('.');
  return dot == std::string::npos ? fqn : fqn.substr(dot + 1);
}

// The target and every type nested in it.
std::vector<const source::TypeDecl*> target_types(const source::DesignModel& model,
                                                  const std::string& fqn) {
  std::vector<const source::TypeDecl*> out;
  for (const auto& [name, t] : model.types()) {
    if (name == fqn || name.starts_with(fqn + ".")) out.push_back(&t);
  }
  return out;
}

bool resolves(const std::vector<const source::TypeDecl*>& types, const llm::PlanEntry& e) {
  std::string id = e.identifier;
  if (auto paren = id.find('('); paren != std::string::npos) id = id.substr(0, paren);
  for (const auto* t : types) {
    switch (e.region_kind) {
      case llm::RegionKind::kClass:
        if (id == t->fqn || id == t->simple_name) return true;
        break;
      case llm::RegionKind::kMethod:
        if (!t->find_methods(simple_name(id)).empty()) return true;
        break;
      case llm::RegionKind::kField:
        if (t->find_field(simple_name(id))) return true;
        break;
      case llm::RegionKind::kVariable:
        if (t->find_field(id)) return true;
        for (const auto& m : t->methods) {
          for (const auto& p : m.params) {
            if (p.name == id) return true;
          }
          for (const auto& l : m.body.locals) {
            if (l.name == id) return true;
          }
        }
        break;
    }
  }
  return false;
}

std::string append_budgeted(const std::vector<std::string>& lines, long token_budget,
                            const std::string& what) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (llm::estimate_tokens(out + lines[i]) > token_budget) {
      out += fmt::format("... {} more {} omitted\n", lines.size() - i, what);
      break;
    }
    out += lines[i];
  }
  return out;
}

}  // namespace

std::string run_planner_tool(const AgentEnv& env, const llm::ToolCall& call) {
  std::string fqn;
  try {
    fqn = nlohmann::json::parse(call.arguments).at("fqn").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    return "error: expected arguments {\"fqn\": \"<class name>\"}";
  }
  if (!env.model.contains(fqn)) return "error: unknown class " + fqn;
  if (call.name == "code_search") return env.model.source_text(fqn);
  if (call.name == "code_metrics") {
    return render_metrics(metrics::compute_class_metrics(env.model, env.graph, fqn));
  }
  if (call.name == "dependency_graph") {
    ClassContext ctx;
    ctx.fqn = fqn;
    for (const auto& e : env.graph.outgoing(fqn)) {
      ctx.outgoing.push_back(e.to + " (" + depgraph::to_string(e.kind) + ")");
    }
    for (const auto& e : env.graph.incoming(fqn)) {
      ctx.incoming.push_back(e.from + " (" + depgraph::to_string(e.kind) + ")");
    }
    return render_dependencies(ctx);
  }
  return "error: unknown tool " + call.name;
}

void resolve_plan(const source::DesignModel& model, const std::string& fqn, PlanResult& result,
                  std::vector<llm::PlanEntry> entries) {
  auto types = target_types(model, fqn);
  llm::RefactoringPlan plan{fqn, {}};
  for (auto& e : entries) {
    if (resolves(types, e)) {
      plan.entries.push_back(std::move(e));
      continue;
    }
    const bool other_class =
        e.region_kind == llm::RegionKind::kClass &&
        std::any_of(model.types().begin(), model.types().end(), [&](const auto& kv) {
          return kv.first == e.identifier || kv.second.simple_name == e.identifier;
        });
    if (other_class) {
      result.warnings.push_back("advisory entry for " + e.identifier + " not applied");
      result.advisory.push_back(std::move(e));
    } else {
      result.warnings.push_back(std::string("dropped ") + llm::to_string(e.region_kind) + " entry '" +
                                e.identifier + "': not found in " + fqn);
      result.dropped.push_back(std::move(e));
    }
  }
  result.plan = std::move(plan);
}

PlanResult plan_refactoring(const AgentEnv& env, const ClassContext& ctx) {
  PlanResult result;
  const auto tools = planner_tools(env.config.ablation);
  std::vector<llm::ChatMessage> messages = planner_messages(ctx, env.config.ablation);
  std::string last_error;
  for (int attempt = 1; attempt <= env.config.max_plan_attempts; ++attempt) {
    result.attempts = attempt;
    if (attempt > 1) {
      messages.push_back({"user", "Your previous reply could not be used: " + last_error +
                                      ". Reply again with the plan in the required format."});
    }
    llm::Response response;
    bool tool_limit = false;
    for (int round = 0;; ++round) {
      llm::Request request;
      request.messages = messages;
      request.tools = tools;
      request.temperature = env.config.backend.temperature;
      request.key = {"planner", "plan", attempt, ctx.fqn};
      response = llm::complete(request, env.backend, env.config.backend.context_window);
      env.transcript.append(request, response);
      if (response.tool_calls.empty()) break;
      if (round >= env.config.max_tool_rounds) {
        tool_limit = true;
        break;
      }
      messages.push_back({"assistant", response.text, response.tool_calls, ""});
      for (const auto& call : response.tool_calls) {
        messages.push_back({"tool", run_planner_tool(env, call), {}, call.id});
      }
    }
    messages.push_back({"assistant", response.text, {}, ""});
    if (tool_limit) {
      last_error = "tool-call limit reached without a plan";
      continue;
    }
    try {
      llm::RefactoringPlan parsed = llm::extract_plan(response.text, ctx.fqn);
      resolve_plan(env.model, ctx.fqn, result, std::move(parsed.entries));
      if (result.plan->entries.empty()) {
        result.plan.reset();
        result.skip_reason = "empty plan";
      }
      return result;
    } catch (const PlanParseError& e) {
      last_error = e.what();
      result.warnings.push_back("planner attempt " + std::to_string(attempt) + ": " + last_error);
    }
  }
  result.skip_reason = "no parseable plan after " + std::to_string(result.attempts) + " attempts";
  return result;
}

Candidate generate_candidate(const AgentEnv& env, const ClassContext& ctx,
                             const llm::RefactoringPlan& plan, const GenerationRequest& request,
                             int attempt) {
  llm::Request r;
  r.messages = generator_messages(ctx, plan, request, env.config.ablation);
  r.temperature = env.config.backend.temperature;
  r.key = {"generator", to_string(request.kind), attempt, ctx.fqn};
  llm::Response response = llm::complete(r, env.backend, env.config.backend.context_window);
  env.transcript.append(r, response);
  Candidate c{response.text, std::nullopt};
  try {
    c.source = llm::extract_code_block(response.text) + "\n";
  } catch (const NoCodeBlock&) {
  }
  return c;
}

std::string summarize_errors(const std::vector<toolchain::Diagnostic>& diagnostics,
                             long token_budget, const AgentEnv* env, int attempt,
                             const std::string& fqn) {
  std::vector<toolchain::Diagnostic> chosen;
  for (const auto& d : diagnostics) {
    if (d.severity == toolchain::Severity::kError) chosen.push_back(d);
  }
  if (chosen.empty()) chosen = diagnostics;

  // file -> (line, message) -> count
  std::map<std::string, std::map<std::pair<int, std::string>, int>> grouped;
  for (const auto& d : chosen) ++grouped[d.file][{d.line, d.message}];
  std::vector<std::string> lines;
  for (const auto& [file, records] : grouped) {
    lines.push_back((file.empty() ? "(no file)" : file) + ":\n");
    for (const auto& [key, count] : records) {
      std::string line = key.first > 0 ? fmt::format("  line {}: {}", key.first, key.second)
                                       : "  " + key.second;
      if (count > 1) line += fmt::format(" (x{})", count);
      lines.push_back(line + "\n");
    }
  }
  std::string digest = append_budgeted(lines, token_budget, "lines");

  if (env && env->config.llm_summary) {
    llm::Request r;
    r.messages = {{"system",
                   "You are the compiler agent of a refactoring team. Explain the root cause of "
                   "these Java compilation errors and how to fix them, briefly."},
                  {"user", digest}};
    r.temperature = env->config.backend.temperature;
    r.key = {"compiler", "summarize", attempt, fqn};
    llm::Response response = llm::complete(r, env->backend, env->config.backend.context_window);
    env->transcript.append(r, response);
    digest += "\nSummary:\n" + response.text + "\n";
  }
  return digest;
}

std::string summarize_test_failures(const toolchain::TestOutcome& outcome, long token_budget) {
  std::vector<std::string> lines;
  lines.push_back(fmt::format("{} of {} tests failed.\n", outcome.failed, outcome.total));
  for (const auto& f : outcome.failures) {
    std::string block = f.test_id + ": " + f.message + "\n";
    if (!f.trace_excerpt.empty()) {
      std::string trace = f.trace_excerpt;
      for (std::size_t p = 0; (p = trace.find('\n', p)) != std::string::npos; p += 3) {
        trace.replace(p, 1, "\n  ");
      }
      block += "  " + trace + "\n";
    }
    lines.push_back(block);
  }
  return append_budgeted(lines, token_budget, "failures");
}

}  // namespace refagent::orchestrator
