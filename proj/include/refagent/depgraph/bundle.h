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

#ifndef REFAGENT_DEPGRAPH_BUNDLE_H_
#define REFAGENT_DEPGRAPH_BUNDLE_H_

#include <map>
#include <string>
#include <vector>

#include "refagent/depgraph/graph.h"
#include "refagent/source/design_model.h"

namespace refagent::depgraph {

/// Source context handed to the planner and generator.
struct CodeBundle {
  std::string target_fqn;
  std::string target_source;
  std::map<std::string, std::string> dependent_sources;
  /// Insertion order of `dependent_sources` (most coupled first).
  std::vector<std::string> dependent_order;
  bool truncated = false;
  long estimated_tokens = 0;
};

/// Main-source dependents of `fqn` ranked by the number of distinct edge
/// kinds they have into it (descending), ties by FQN. Types nested inside
/// `fqn` are excluded since their text is part of the target's.
std::vector<std::string> ranked_dependents(const source::DesignModel& model,
                                           const DependencyGraph& graph, const std::string& fqn);

/// Target source first, then ranked dependents while the running token
/// estimate stays within `token_budget`; stops at the first dependent that
/// does not fit. Throws TargetOverBudget when the target alone exceeds the
/// budget and UnknownType for unknown `fqn`.
CodeBundle collect_bundle(const source::DesignModel& model, const DependencyGraph& graph,
                          const std::string& fqn, long token_budget);

}  // namespace refagent::depgraph

#endif  // REFAGENT_DEPGRAPH_BUNDLE_H_
