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

#ifndef REFAGENT_METRICS_METRICS_H_
#define REFAGENT_METRICS_METRICS_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "refagent/depgraph/graph.h"
#include "refagent/source/design_model.h"

namespace refagent::metrics {

/// QMOOD design metrics plus the auxiliary LCOM, LOC and max_cc. Per-class
/// vectors leave DSC and NOH at zero; the design-level vector holds means
/// of the per-class values and DSC/NOH taken directly.
struct MetricVector {
  double DSC = 0;
  double NOH = 0;
  double ANA = 0;
  double DAM = 0;
  double DCC = 0;
  double CAM = 0;
  double MOA = 0;
  double MFA = 0;
  double NOP = 0;
  double CIS = 0;
  double NOM = 0;
  double LCOM = 0;
  double LOC = 0;
  double max_cc = 0;

  /// Canonical names in column order.
  static const std::vector<std::string>& names();
  /// Throws UnknownMetricName.
  double get(const std::string& name) const;
  double& at(const std::string& name);

  MetricVector operator+(const MetricVector& o) const;
  MetricVector operator*(double k) const;
  friend bool operator==(const MetricVector&, const MetricVector&) = default;
};

struct MethodMetrics {
  std::string signature;
  int cc = 1;
  int loc = 0;
  int param_count = 0;
};

struct ClassMetrics {
  std::string fqn;
  MetricVector values;
  std::vector<MethodMetrics> methods;
  /// Metrics that fell back to their degenerate-case value (e.g. "CAM").
  std::vector<std::string> degenerate;
};

struct DesignMetrics {
  MetricVector aggregate;
  std::vector<ClassMetrics> classes;  // sorted by FQN
};

/// 1 + decision points.
int cyclomatic_complexity(const source::MethodDecl& method);

/// Throws UnknownType.
ClassMetrics compute_class_metrics(const source::DesignModel& model,
                                   const depgraph::DependencyGraph& graph, const std::string& fqn);

/// Per-class metrics for every main-source type, DSC/NOH over the main
/// design, and the mean-aggregated design vector.
DesignMetrics compute_design_metrics(const source::DesignModel& model,
                                     const depgraph::DependencyGraph& graph);

/// Root types (no project parent) with at least one project descendant,
/// counted over `types`.
int count_hierarchies(const source::DesignModel& model, const std::vector<std::string>& types);

/// Class columns (no DSC/NOH): fqn,DCC,CAM,CIS,NOM,NOP,DAM,MOA,MFA,ANA,LCOM,LOC,max_cc.
const std::vector<std::string>& class_columns();
std::string to_csv(const DesignMetrics& metrics);
nlohmann::json to_json(const MetricVector& v);
MetricVector metric_vector_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ClassMetrics& c);
nlohmann::json to_json(const DesignMetrics& d);

}  // namespace refagent::metrics

#endif  // REFAGENT_METRICS_METRICS_H_
