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

#include "refagent/depgraph/bundle.h"

#include <algorithm>

#include "refagent/error.h"
#include "refagent/llm/tokens.h"

namespace refagent::depgraph {

std::vector<std::string> ranked_dependents(const source::DesignModel& model,
                                           const DependencyGraph& graph, const std::string& fqn) {
  std::map<std::string, std::set<EdgeKind>> kinds;
  const std::string nested_prefix = fqn + ".";
  for (const auto& e : graph.incoming(fqn)) {
    if (model.is_test(e.from)) continue;
    if (e.from.rfind(nested_prefix, 0) == 0) continue;
    kinds[e.from].insert(e.kind);
  }
  std::vector<std::string> out;
  for (const auto& [dep, _] : kinds) out.push_back(dep);
  std::stable_sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
    return kinds[a].size() > kinds[b].size();
  });
  return out;
}

CodeBundle collect_bundle(const source::DesignModel& model, const DependencyGraph& graph,
                          const std::string& fqn, long token_budget) {
  CodeBundle bundle;
  bundle.target_fqn = fqn;
  bundle.target_source = model.source_text(fqn);
  bundle.estimated_tokens = llm::estimate_tokens(bundle.target_source);
  if (bundle.estimated_tokens > token_budget) {
    throw TargetOverBudget(fqn + " (~" + std::to_string(bundle.estimated_tokens) + " > " +
                           std::to_string(token_budget) + " tokens)");
  }
  std::vector<std::string> ranked = ranked_dependents(model, graph, fqn);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    std::string text = model.source_text(ranked[i]);
    long cost = llm::estimate_tokens(text);
    if (bundle.estimated_tokens + cost > token_budget) {
      bundle.truncated = true;
      break;
    }
    bundle.estimated_tokens += cost;
    bundle.dependent_sources.emplace(ranked[i], std::move(text));
    bundle.dependent_order.push_back(ranked[i]);
  }
  return bundle;
}

}  // namespace refagent::depgraph
