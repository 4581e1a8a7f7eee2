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

#ifndef REFAGENT_ORCHESTRATOR_CONFIG_H_
#define REFAGENT_ORCHESTRATOR_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "refagent/llm/backends.h"
#include "refagent/quality/qmood.h"
#include "refagent/smells/smells.h"
#include "refagent/source/design_model.h"

namespace refagent::orchestrator {

/// Which context sources feed the planner (and the generator).
struct Ablation {
  bool context = true;     // metrics table and the code_metrics tool
  bool depgraph = true;    // dependency section and the dependency_graph tool
  bool codesearch = true;  // dependent sources and the code_search tool
};

struct EngineConfig {
  llm::BackendConfig backend;
  long token_budget = 4096;
  int max_compile_iters = 20;
  int max_test_iters = 20;
  int max_plan_attempts = 3;
  int max_tool_rounds = 4;
  long summary_token_budget = 1024;
  /// Ask the backend for an error summary and append it to the digest.
  bool llm_summary = false;
  std::uint64_t seed = 0;
  smells::Thresholds thresholds;
  /// "standard", "printed", or a path to a JSON coefficient table.
  std::string coefficient_table = "standard";
  Ablation ablation;
  source::ProjectLayout layout;
  /// "none", "stub" or "external".
  std::string test_generator = "none";
  std::filesystem::path stub_dir;
  std::vector<std::string> generator_command;  // external; empty: EvoSuite default
  /// Run after each committed session with ${CLASS} substituted; empty: off.
  std::vector<std::string> vcs_hook;
  bool dry_run = false;
  std::vector<std::string> only_classes;  // empty: every main top-level class

  /// Throws ConfigError: caps >= 1, token budget >= 256, valid backend.
  void validate() const;
  quality::CoefficientTable coefficients() const;
  nlohmann::json to_json() const;
};

}  // namespace refagent::orchestrator

#endif  // REFAGENT_ORCHESTRATOR_CONFIG_H_
