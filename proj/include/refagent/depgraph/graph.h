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

#ifndef REFAGENT_DEPGRAPH_GRAPH_H_
#define REFAGENT_DEPGRAPH_GRAPH_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "refagent/source/design_model.h"

namespace refagent::depgraph {

enum class EdgeKind {
  kExtends,
  kImplements,
  kFieldType,
  kParamType,
  kReturnType,
  kInvocation,
  kImport,
};

const char* to_string(EdgeKind kind);
std::optional<EdgeKind> edge_kind_from_string(const std::string& s);

struct Edge {
  std::string from;
  std::string to;
  EdgeKind kind = EdgeKind::kImport;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Class-level dependency graph over project types. Edges whose target is
/// not a project type are kept aside in `external_edges` (target is the
/// name as written).
class DependencyGraph {
 public:
  DependencyGraph() = default;
  DependencyGraph(std::set<std::string> nodes, std::set<Edge> edges,
                  std::set<Edge> external_edges = {});

  const std::set<std::string>& nodes() const { return nodes_; }
  const std::set<Edge>& edges() const { return edges_; }
  const std::set<Edge>& external_edges() const { return external_edges_; }
  bool has_node(const std::string& fqn) const { return nodes_.count(fqn) > 0; }

  /// Edges leaving / entering `fqn`. Throw UnknownType.
  std::vector<Edge> outgoing(const std::string& fqn) const;
  std::vector<Edge> incoming(const std::string& fqn) const;

  nlohmann::json to_json() const;
  static DependencyGraph from_json(const nlohmann::json& j);

 private:
  std::set<std::string> nodes_;
  std::set<Edge> edges_;
  std::set<Edge> external_edges_;
  std::map<std::string, std::vector<Edge>> out_;
  std::map<std::string, std::vector<Edge>> in_;
};

DependencyGraph extract_dependencies(const source::DesignModel& model);

/// Every X with an edge (X, fqn, *). Throws UnknownType.
std::set<std::string> first_degree_dependents(const DependencyGraph& graph, const std::string& fqn);

/// Every Y with an edge (fqn, Y, *). Throws UnknownType.
std::set<std::string> first_degree_dependencies(const DependencyGraph& graph,
                                                const std::string& fqn);

/// Test types with an edge into `fqn` (or into a type nested in it), plus
/// test types named <Simple>Test or Test<Simple>.
std::set<std::string> related_tests(const DependencyGraph& graph, const source::DesignModel& model,
                                    const std::string& fqn);

/// Strongly connected components of size > 1, each sorted (so it starts at
/// its least FQN), reported in order of that first member.
std::vector<std::vector<std::string>> find_cycles(const DependencyGraph& graph);

}  // namespace refagent::depgraph

#endif  // REFAGENT_DEPGRAPH_GRAPH_H_
