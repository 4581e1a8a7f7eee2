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

#include "refagent/depgraph/graph.h"

#include <algorithm>
#include <functional>

#include "refagent/error.h"

namespace refagent::depgraph {

using source::DesignModel;
using source::TypeDecl;
using source::TypeRef;

namespace {

constexpr EdgeKind kAllKinds[] = {EdgeKind::kExtends,    EdgeKind::kImplements,
                                  EdgeKind::kFieldType,  EdgeKind::kParamType,
                                  EdgeKind::kReturnType, EdgeKind::kInvocation,
                                  EdgeKind::kImport};

}  // namespace

const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kExtends: return "extends";
    case EdgeKind::kImplements: return "implements";
    case EdgeKind::kFieldType: return "field_type";
    case EdgeKind::kParamType: return "param_type";
    case EdgeKind::kReturnType: return "return_type";
    case EdgeKind::kInvocation: return "invocation";
    case EdgeKind::kImport: return "import";
  }
  return "import";
}

std::optional<EdgeKind> edge_kind_from_string(const std::string& s) {
  for (EdgeKind k : kAllKinds) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

DependencyGraph::DependencyGraph(std::set<std::string> nodes, std::set<Edge> edges,
                                 std::set<Edge> external_edges)
    : nodes_(std::move(nodes)), external_edges_(std::move(external_edges)) {
  for (const auto& e : edges) {
    if (e.from == e.to) continue;
    if (!nodes_.count(e.from) || !nodes_.count(e.to)) continue;
    edges_.insert(e);
  }
  for (const auto& e : edges_) {
    out_[e.from].push_back(e);
    in_[e.to].push_back(e);
  }
}

std::vector<Edge> DependencyGraph::outgoing(const std::string& fqn) const {
  if (!has_node(fqn)) throw UnknownType(fqn);
  auto it = out_.find(fqn);
  return it == out_.end() ? std::vector<Edge>{} : it->second;
}

std::vector<Edge> DependencyGraph::incoming(const std::string& fqn) const {
  if (!has_node(fqn)) throw UnknownType(fqn);
  auto it = in_.find(fqn);
  return it == in_.end() ? std::vector<Edge>{} : it->second;
}

nlohmann::json DependencyGraph::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : edges_) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}});
  }
  nlohmann::json external = nlohmann::json::array();
  for (const auto& e : external_edges_) {
    external.push_back({{"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}});
  }
  return {{"nodes", nodes_}, {"edges", edges}, {"external", external}};
}

DependencyGraph DependencyGraph::from_json(const nlohmann::json& j) {
  auto read_edges = [](const nlohmann::json& arr) {
    std::set<Edge> out;
    for (const auto& e : arr) {
      auto kind = edge_kind_from_string(e.at("kind").get<std::string>());
      if (!kind) throw Error("unknown edge kind " + e.at("kind").dump());
      out.insert({e.at("from").get<std::string>(), e.at("to").get<std::string>(), *kind});
    }
    return out;
  };
  return DependencyGraph(j.at("nodes").get<std::set<std::string>>(), read_edges(j.at("edges")),
                         j.contains("external") ? read_edges(j.at("external")) : std::set<Edge>{});
}

DependencyGraph extract_dependencies(const DesignModel& model) {
  std::set<std::string> nodes;
  std::set<Edge> edges;
  std::set<Edge> external;
  for (const auto& [fqn, _] : model.types()) nodes.insert(fqn);

  auto add = [&](const std::string& from, const TypeRef& ref, EdgeKind kind) {
    if (ref.is_project()) {
      if (ref.resolved != from) edges.insert({from, ref.resolved, kind});
    } else if (ref.external) {
      external.insert({from, ref.name, kind});
    }
  };

  for (const auto& [fqn, t] : model.types()) {
    if (t.supertype) add(fqn, *t.supertype, EdgeKind::kExtends);
    for (const auto& i : t.interfaces) {
      // Interfaces extending interfaces are recorded as `extends`.
      add(fqn, i, t.kind == source::TypeKind::kInterface ? EdgeKind::kExtends
                                                         : EdgeKind::kImplements);
    }
    for (const auto& f : t.fields) add(fqn, f.type, EdgeKind::kFieldType);
    for (const auto& m : t.methods) {
      if (!m.is_constructor) add(fqn, m.return_type, EdgeKind::kReturnType);
      for (const auto& p : m.params) add(fqn, p.type, EdgeKind::kParamType);
      for (const auto& inv : m.body.invoked_types) add(fqn, inv, EdgeKind::kInvocation);
    }
  }

  for (const auto& unit : model.units()) {
    for (const auto& imp : unit.imports) {
      if (imp.on_demand) continue;
      std::string target = imp.name;
      if (imp.is_static) {
        auto dot = target.rfind('.');
        if (dot == std::string::npos) continue;
        target = target.substr(0, dot);
      }
      for (const auto& t : unit.types) {
        if (!t.is_top_level()) continue;
        if (model.contains(target)) {
          if (target != t.fqn) edges.insert({t.fqn, target, EdgeKind::kImport});
        } else {
          external.insert({t.fqn, target, EdgeKind::kImport});
        }
      }
    }
  }
  return DependencyGraph(std::move(nodes), std::move(edges), std::move(external));
}

std::set<std::string> first_degree_dependents(const DependencyGraph& graph,
                                              const std::string& fqn) {
  std::set<std::string> out;
  for (const auto& e : graph.incoming(fqn)) out.insert(e.from);
  return out;
}

std::set<std::string> first_degree_dependencies(const DependencyGraph& graph,
                                                const std::string& fqn) {
  std::set<std::string> out;
  for (const auto& e : graph.outgoing(fqn)) out.insert(e.to);
  return out;
}

std::set<std::string> related_tests(const DependencyGraph& graph, const DesignModel& model,
                                    const std::string& fqn) {
  std::set<std::string> out;
  if (!graph.has_node(fqn)) return out;
  const std::string prefix = fqn + ".";
  for (const auto& e : graph.edges()) {
    if (e.to != fqn && e.to.rfind(prefix, 0) != 0) continue;
    if (model.contains(e.from) && model.is_test(e.from)) {
      // Report the top-level test class; nested test types run with it.
      std::string top = e.from;
      while (!model.type(top).outer_fqn.empty()) top = model.type(top).outer_fqn;
      out.insert(top);
    }
  }
  const std::string simple = model.type(fqn).simple_name;
  for (const auto& test : model.test_types()) {
    const std::string& name = model.type(test).simple_name;
    if (name == simple + "Test" || name == "Test" + simple) out.insert(test);
  }
  return out;
}

std::vector<std::vector<std::string>> find_cycles(const DependencyGraph& graph) {
  // Tarjan's algorithm over the full edge set.
  std::map<std::string, int> index;
  std::map<std::string, int> low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> out;
  int counter = 0;
  std::function<void(const std::string&)> connect = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& e : graph.outgoing(v)) {
      if (!index.count(e.to)) {
        connect(e.to);
        low[v] = std::min(low[v], low[e.to]);
      } else if (on_stack.count(e.to)) {
        low[v] = std::min(low[v], index[e.to]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> component;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        component.push_back(w);
      } while (w != v);
      if (component.size() > 1) {
        std::sort(component.begin(), component.end());
        out.push_back(std::move(component));
      }
    }
  };
  for (const auto& n : graph.nodes()) {
    if (!index.count(n)) connect(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace refagent::depgraph
