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

#include "refagent/orchestrator/config.h"

#include "refagent/error.h"

namespace refagent::orchestrator {

void EngineConfig::validate() const {
  if (max_compile_iters < 1 || max_test_iters < 1 || max_plan_attempts < 1) {
    throw ConfigError("iteration caps must be at least 1");
  }
  if (token_budget < 256) throw ConfigError("token budget must be at least 256");
  if (max_tool_rounds < 0) throw ConfigError("tool rounds must not be negative");
  if (test_generator != "none" && test_generator != "stub" && test_generator != "external") {
    throw ConfigError("unknown test generator '" + test_generator + "'");
  }
  if (test_generator == "stub" && stub_dir.empty()) {
    throw ConfigError("the stub test generator needs a stub directory");
  }
  backend.validate();
}

quality::CoefficientTable EngineConfig::coefficients() const {
  if (coefficient_table == "standard") return quality::CoefficientTable::standard();
  if (coefficient_table == "printed") return quality::CoefficientTable::printed();
  return quality::CoefficientTable::load(coefficient_table);
}

nlohmann::json EngineConfig::to_json() const {
  return {{"backend",
           {{"kind", llm::to_string(backend.kind)},
            {"endpoint", backend.endpoint},
            {"model", backend.model},
            {"temperature", backend.temperature},
            {"context_window", backend.context_window}}},
          {"token_budget", token_budget},
          {"max_compile_iters", max_compile_iters},
          {"max_test_iters", max_test_iters},
          {"max_plan_attempts", max_plan_attempts},
          {"seed", seed},
          {"coefficient_table", coefficient_table},
          {"ablation",
           {{"context", ablation.context},
            {"depgraph", ablation.depgraph},
            {"codesearch", ablation.codesearch}}},
          {"thresholds",
           {{"long_method_loc", thresholds.long_method_loc},
            {"complex_method_cc", thresholds.complex_method_cc},
            {"long_params", thresholds.long_params},
            {"large_class_nom", thresholds.large_class_nom},
            {"large_class_loc", thresholds.large_class_loc},
            {"magic_allowlist", thresholds.magic_allowlist},
            {"entry_points", thresholds.entry_points}}},
          {"source_roots", layout.source_roots},
          {"test_roots", layout.test_roots},
          {"test_generator", test_generator},
          {"llm_summary", llm_summary},
          {"dry_run", dry_run}};
}

}  // namespace refagent::orchestrator
