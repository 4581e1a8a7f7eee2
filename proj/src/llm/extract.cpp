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

#include "refagent/llm/extract.h"

#include <algorithm>
#include <cctype>

#include "refagent/error.h"

namespace refagent::llm {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

source::LineRange range_from_json(const nlohmann::json& j) {
  source::LineRange r;
  if (j.is_array() && j.size() == 2) {
    r = {j[0].get<int>(), j[1].get<int>()};
  } else if (j.is_object()) {
    r = {j.at("start").get<int>(), j.at("end").get<int>()};
  } else {
    throw PlanParseError("line_range must be [start, end]");
  }
  if (r.start < 1 || r.end < r.start) {
    throw PlanParseError("invalid line_range [" + std::to_string(r.start) + ", " +
                         std::to_string(r.end) + "]");
  }
  return r;
}

std::string required_string(const nlohmann::json& e, const char* key, std::size_t index) {
  if (!e.contains(key) || !e.at(key).is_string() || e.at(key).get<std::string>().empty()) {
    throw PlanParseError("entry " + std::to_string(index) + " lacks string field '" + key + "'");
  }
  return e.at(key).get<std::string>();
}

PlanEntry entry_from_json(const nlohmann::json& e, std::size_t index) {
  if (!e.is_object()) throw PlanParseError("entry " + std::to_string(index) + " is not an object");
  PlanEntry entry;
  std::string kind = required_string(e, "region_kind", index);
  auto parsed = region_kind_from_string(lower(kind));
  if (!parsed) throw PlanParseError("unknown region_kind '" + kind + "'");
  entry.region_kind = *parsed;
  entry.identifier = required_string(e, "identifier", index);
  entry.refactoring_type = required_string(e, "refactoring_type", index);
  entry.instruction = required_string(e, "instruction", index);
  if (e.contains("line_range") && !e.at("line_range").is_null()) {
    try {
      entry.line_range = range_from_json(e.at("line_range"));
    } catch (const nlohmann::json::exception& ex) {
      throw PlanParseError(std::string("line_range: ") + ex.what());
    }
  }
  return entry;
}

}  // namespace

std::vector<Fence> find_fences(std::string_view text) {
  std::vector<Fence> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t open = text.find("```", pos);
    if (open == std::string_view::npos) break;
    std::size_t line_end = text.find('\n', open);
    if (line_end == std::string_view::npos) break;
    std::size_t close = text.find("```", line_end + 1);
    if (close == std::string_view::npos) break;
    Fence f;
    f.tag = lower(trim(text.substr(open + 3, line_end - open - 3)));
    f.body = std::string(text.substr(line_end + 1, close - line_end - 1));
    out.push_back(std::move(f));
    pos = close + 3;
  }
  return out;
}

std::string extract_code_block(std::string_view response_text) {
  auto fences = find_fences(response_text);
  if (fences.empty()) throw NoCodeBlock();
  for (auto it = fences.rbegin(); it != fences.rend(); ++it) {
    if (it->tag == "java") return trim(it->body);
  }
  return trim(fences.back().body);
}

const char* to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::kClass: return "class";
    case RegionKind::kMethod: return "method";
    case RegionKind::kField: return "field";
    case RegionKind::kVariable: return "variable";
  }
  return "class";
}

std::optional<RegionKind> region_kind_from_string(std::string_view s) {
  if (s == "class") return RegionKind::kClass;
  if (s == "method") return RegionKind::kMethod;
  if (s == "field") return RegionKind::kField;
  if (s == "variable") return RegionKind::kVariable;
  return std::nullopt;
}

nlohmann::json to_json(const PlanEntry& e) {
  nlohmann::json j = {{"region_kind", to_string(e.region_kind)},
                      {"identifier", e.identifier},
                      {"refactoring_type", e.refactoring_type},
                      {"instruction", e.instruction}};
  j["line_range"] = e.line_range ? nlohmann::json{e.line_range->start, e.line_range->end}
                                 : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const RefactoringPlan& plan) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : plan.entries) entries.push_back(to_json(e));
  return {{"target", plan.target_fqn}, {"entries", entries}};
}

RefactoringPlan plan_from_json(const nlohmann::json& j) {
  RefactoringPlan plan;
  const nlohmann::json* entries = &j;
  if (j.is_object()) {
    plan.target_fqn = j.value("target", "");
    if (!j.contains("entries")) throw PlanParseError("object has no 'entries' array");
    entries = &j.at("entries");
  }
  if (!entries->is_array()) throw PlanParseError("plan entries must be an array");
  for (std::size_t i = 0; i < entries->size(); ++i) {
    plan.entries.push_back(entry_from_json((*entries)[i], i));
  }
  return plan;
}

RefactoringPlan extract_plan(std::string_view response_text, const std::string& target_fqn) {
  auto fences = find_fences(response_text);
  const Fence* chosen = nullptr;
  for (auto it = fences.rbegin(); it != fences.rend() && !chosen; ++it) {
    if (it->tag == "json") chosen = &*it;
  }
  for (auto it = fences.rbegin(); it != fences.rend() && !chosen; ++it) {
    std::string body = trim(it->body);
    if (!body.empty() && (body.front() == '[' || body.front() == '{')) chosen = &*it;
  }
  if (!chosen) throw PlanParseError("no JSON fence in response");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(chosen->body);
  } catch (const nlohmann::json::exception& e) {
    throw PlanParseError(std::string("invalid JSON: ") + e.what());
  }
  RefactoringPlan plan = plan_from_json(j);
  if (!target_fqn.empty()) plan.target_fqn = target_fqn;
  return plan;
}

}  // namespace refagent::llm
