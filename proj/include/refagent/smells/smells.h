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

#ifndef REFAGENT_SMELLS_SMELLS_H_
#define REFAGENT_SMELLS_SMELLS_H_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "refagent/depgraph/graph.h"
#include "refagent/source/design_model.h"

namespace refagent::smells {

enum class Category { kDesign, kImplementation };
const char* to_string(Category c);

struct Thresholds {
  int long_method_loc = 100;
  int complex_method_cc = 8;
  int long_params = 6;
  int large_class_nom = 20;
  int large_class_loc = 1000;
  std::set<double> magic_allowlist{-1, 0, 1, 2};
  /// FQNs never reported as UnutilizedAbstraction besides types with main().
  std::set<std::string> entry_points;
};

struct SmellInstance {
  std::string kind;
  Category category = Category::kDesign;
  std::string fqn;
  std::optional<std::string> method;  // signature
  source::LineRange line_range;
  std::string evidence;
  friend bool operator==(const SmellInstance&, const SmellInstance&) = default;
};

/// What a rule sees: the model, its graph, the SCC membership and the
/// thresholds in force.
struct DetectionContext {
  const source::DesignModel& model;
  const depgraph::DependencyGraph& graph;
  const Thresholds& thresholds;
  std::map<std::string, std::vector<std::string>> cycle_of;  // member -> its SCC
};

struct SmellRule {
  std::string kind;
  Category category;
  std::function<void(const DetectionContext&, const source::TypeDecl&,
                     std::vector<SmellInstance>&)>
      detect;
};

/// The registered catalog, in a fixed order. New smells are added here.
const std::vector<SmellRule>& catalog();
std::vector<std::string> catalog_kinds();

/// Runs every catalog rule over the main-source types; result sorted by
/// (fqn, line_range, kind), then method and evidence.
std::vector<SmellInstance> detect_smells(const source::DesignModel& model,
                                         const depgraph::DependencyGraph& graph,
                                         const Thresholds& thresholds = {});

struct DiffCounts {
  int removed = 0;
  int introduced = 0;
  int unchanged = 0;
  friend bool operator==(const DiffCounts&, const DiffCounts&) = default;
};

/// Multiset matching on (kind, fqn, method); line ranges are ignored.
std::map<std::string, DiffCounts> smell_diff(const std::vector<SmellInstance>& before,
                                             const std::vector<SmellInstance>& after);

/// (before - after) / before * 100. Throws UndefinedRate when before is 0.
double smell_reduction_rate(double before_count, double after_count);

nlohmann::json to_json(const std::vector<SmellInstance>& smells);
std::vector<SmellInstance> smells_from_json(const nlohmann::json& j);

}  // namespace refagent::smells

#endif  // REFAGENT_SMELLS_SMELLS_H_
