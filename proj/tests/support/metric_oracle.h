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

// Brute-force metric recomputation from generator ground truth.

#ifndef REFAGENT_TESTS_SUPPORT_METRIC_ORACLE_H_
#define REFAGENT_TESTS_SUPPORT_METRIC_ORACLE_H_

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "refagent/depgraph/graph.h"
#include "refagent/source/design_model.h"
#include "refagent/source/parser.h"
#include "support/java_gen.h"

namespace refagent::testing {

using depgraph::DependencyGraph;
using source::DesignModel;

inline DesignModel model_of(const std::vector<std::pair<std::string, std::string>>& files,
                     const std::set<std::string>& test_paths = {}) {
  std::vector<source::SourceUnit> units;
  for (const auto& [path, text] : files) {
    units.push_back(source::parse_source(text, path));
    units.back().is_test = test_paths.count(path) > 0;
  }
  return DesignModel::build(std::move(units));
}

struct Pool {
  std::vector<GenClass> classes;
  DesignModel model;
  DependencyGraph graph;
};

inline Pool random_pool(JavaGen& gen, int size) {
  Pool pool;
  std::vector<std::pair<std::string, std::string>> files;
  for (int i = 0; i < size; ++i) {
    GenClass c = gen.random_class("T" + std::to_string(i), size);
    // Keep the hierarchy acyclic: only extend lower-numbered classes.
    if (!c.supertype.empty() && std::stoi(c.supertype.substr(1)) >= i) c.supertype.clear();
    files.emplace_back(c.name + ".java", render(c));
    pool.classes.push_back(std::move(c));
  }
  pool.model = model_of(files);
  pool.graph = depgraph::extract_dependencies(pool.model);
  return pool;
}

inline bool is_project(const std::string& type) { return type.size() > 1 && type[0] == 'T'; }

inline std::string oracle_sig(const GenMethod& m) {
  std::string s = m.name + "(";
  for (const auto& p : m.params) s += p.type + ",";
  return s;
}

struct OracleMetrics {
  double dcc, cam, dam, moa, mfa;
  std::vector<int> cc;
};

inline OracleMetrics oracle(const Pool& pool, std::size_t index) {
  const GenClass& c = pool.classes[index];
  OracleMetrics o{};
  std::set<std::string> coupled;
  for (const auto& f : c.fields) {
    if (is_project(f.type) && f.type != c.name) coupled.insert(f.type);
  }
  std::vector<const GenMethod*> methods;
  for (const auto& m : c.methods) {
    if (m.is_constructor) continue;
    methods.push_back(&m);
    if (is_project(m.return_type) && m.return_type != c.name) coupled.insert(m.return_type);
    for (const auto& p : m.params) {
      if (is_project(p.type) && p.type != c.name) coupled.insert(p.type);
    }
  }
  o.dcc = static_cast<double>(coupled.size());

  std::set<std::string> all;
  double sum = 0;
  for (const auto* m : methods) {
    std::set<std::string> types;
    for (const auto& p : m->params) types.insert(p.type);
    sum += static_cast<double>(types.size());
    all.insert(types.begin(), types.end());
  }
  o.cam = methods.empty() || all.empty() ? 0 : sum / (methods.size() * all.size());

  double hidden = 0;
  for (const auto& f : c.fields) {
    hidden += f.visibility == "private" || f.visibility == "protected";
    o.moa += is_project(f.type);
  }
  o.dam = c.fields.empty() ? 1 : hidden / c.fields.size();

  std::set<std::string> own;
  for (const auto* m : methods) own.insert(oracle_sig(*m));
  std::set<std::string> inherited;
  for (std::string sup = c.supertype; !sup.empty();) {
    const GenClass& parent = pool.classes[std::stoul(sup.substr(1))];
    for (const auto& m : parent.methods) {
      if (m.is_constructor || m.visibility == "private") continue;
      if (!own.count(oracle_sig(m))) inherited.insert(oracle_sig(m));
    }
    sup = parent.supertype;
  }
  double denom = static_cast<double>(inherited.size() + methods.size());
  o.mfa = denom == 0 ? 0 : inherited.size() / denom;

  for (const auto& m : c.methods) o.cc.push_back(1 + oracle_decision_points(m.extra_body));
  return o;
}

}  // namespace refagent::testing

#endif  // REFAGENT_TESTS_SUPPORT_METRIC_ORACLE_H_
