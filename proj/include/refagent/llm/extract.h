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

#ifndef REFAGENT_LLM_EXTRACT_H_
#define REFAGENT_LLM_EXTRACT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "refagent/source/model.h"

namespace refagent::llm {

struct Fence {
  std::string tag;  // lower-cased info string, may be empty
  std::string body;
};

/// Every complete ``` fence in order of appearance.
std::vector<Fence> find_fences(std::string_view text);

/// Body of the last ```java fence, else of the last fence, trimmed.
/// Throws NoCodeBlock.
std::string extract_code_block(std::string_view response_text);

enum class RegionKind { kClass, kMethod, kField, kVariable };

const char* to_string(RegionKind kind);
std::optional<RegionKind> region_kind_from_string(std::string_view s);

struct PlanEntry {
  RegionKind region_kind = RegionKind::kClass;
  std::string identifier;
  std::optional<source::LineRange> line_range;
  std::string refactoring_type;  // kept verbatim
  std::string instruction;
  friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

struct RefactoringPlan {
  std::string target_fqn;
  std::vector<PlanEntry> entries;
};

nlohmann::json to_json(const PlanEntry& e);
nlohmann::json to_json(const RefactoringPlan& plan);
RefactoringPlan plan_from_json(const nlohmann::json& j);

/// Parses the last ```json fence (or, failing that, the last fence whose
/// body starts with '[' or '{'). Accepts a bare array of entries or an
/// object with an "entries" array. Throws PlanParseError.
RefactoringPlan extract_plan(std::string_view response_text, const std::string& target_fqn = "");

}  // namespace refagent::llm

#endif  // REFAGENT_LLM_EXTRACT_H_
