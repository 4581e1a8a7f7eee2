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

#include "refagent/metrics/metrics.h"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>

#include "refagent/error.h"

namespace refagent::metrics {

using source::DesignModel;
using source::MethodDecl;
using source::Modifier;
using source::TypeDecl;

namespace {

struct Member {
  const char* name;
  double MetricVector::*ptr;
};

const std::vector<Member>& members() {
  static const std::vector<Member> kMembers = {
      {"DSC", &MetricVector::DSC},   {"NOH", &MetricVector::NOH},
      {"ANA", &MetricVector::ANA},   {"DAM", &MetricVector::DAM},
      {"DCC", &MetricVector::DCC},   {"CAM", &MetricVector::CAM},
      {"MOA", &MetricVector::MOA},   {"MFA", &MetricVector::MFA},
      {"NOP", &MetricVector::NOP},   {"CIS", &MetricVector::CIS},
      {"NOM", &MetricVector::NOM},   {"LCOM", &MetricVector::LCOM},
      {"LOC", &MetricVector::LOC},   {"max_cc", &MetricVector::max_cc},
  };
  return kMembers;
}

bool overridable(const TypeDecl& t, const MethodDecl& m) {
  if (t.kind == source::TypeKind::kInterface) return true;
  if (m.modifiers.has(Modifier::kAbstract)) return true;
  return !m.modifiers.has(Modifier::kStatic) && !m.modifiers.has(Modifier::kFinal) &&
         !m.is_private();
}

std::string format_number(double v) { return fmt::format("{}", v); }

}  // namespace

const std::vector<std::string>& MetricVector::names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> out;
    for (const auto& m : members()) out.push_back(m.name);
    return out;
  }();
  return kNames;
}

double MetricVector::get(const std::string& name) const {
  for (const auto& m : members()) {
    if (name == m.name) return this->*m.ptr;
  }
  throw UnknownMetricName(name);
}

double& MetricVector::at(const std::string& name) {
  for (const auto& m : members()) {
    if (name == m.name) return this->*m.ptr;
  }
  throw UnknownMetricName(name);
}

MetricVector MetricVector::operator+(const MetricVector& o) const {
  MetricVector out;
  for (const auto& m : members()) out.*m.ptr = this->*m.ptr + o.*m.ptr;
  return out;
}

MetricVector MetricVector::operator*(double k) const {
  MetricVector out;
  for (const auto& m : members()) out.*m.ptr = this->*m.ptr * k;
  return out;
}

int cyclomatic_complexity(const MethodDecl& method) { return 1 + method.body.decision_points; }

ClassMetrics compute_class_metrics(const DesignModel& model, const depgraph::DependencyGraph& graph,
                                   const std::string& fqn) {
  const TypeDecl& t = model.type(fqn);
  ClassMetrics out;
  out.fqn = fqn;
  MetricVector& v = out.values;

  std::vector<const MethodDecl*> methods;
  for (const auto& m : t.methods) {
    if (!m.is_constructor) methods.push_back(&m);
  }
  const double nom = static_cast<double>(methods.size());
  v.NOM = nom;

  std::set<std::string> coupled;
  if (graph.has_node(fqn)) {
    for (const auto& e : graph.outgoing(fqn)) {
      if (e.kind == depgraph::EdgeKind::kFieldType || e.kind == depgraph::EdgeKind::kParamType ||
          e.kind == depgraph::EdgeKind::kReturnType) {
        coupled.insert(e.to);
      }
    }
  }
  v.DCC = static_cast<double>(coupled.size());

  std::set<std::string> all_param_types;
  double sum_param_types = 0;
  for (const auto* m : methods) {
    std::set<std::string> p;
    for (const auto& param : m->params) p.insert(param.type.display());
    sum_param_types += static_cast<double>(p.size());
    all_param_types.insert(p.begin(), p.end());
  }
  if (methods.empty() || all_param_types.empty()) {
    v.CAM = 0;
    out.degenerate.push_back("CAM");
  } else {
    v.CAM = sum_param_types / (nom * static_cast<double>(all_param_types.size()));
  }

  for (const auto* m : methods) {
    if (m->is_public()) v.CIS += 1;
    if (overridable(t, *m)) v.NOP += 1;
  }

  double hidden = 0;
  for (const auto& f : t.fields) {
    if (f.modifiers.has(Modifier::kPrivate) || f.modifiers.has(Modifier::kProtected)) hidden += 1;
    if (f.type.is_project()) v.MOA += 1;
  }
  if (t.fields.empty()) {
    v.DAM = 1;
    out.degenerate.push_back("DAM");
  } else {
    v.DAM = hidden / static_cast<double>(t.fields.size());
  }

  const std::vector<std::string> chain = source::ancestors(model, fqn);
  v.ANA = static_cast<double>(chain.size());
  std::set<std::string> own;
  for (const auto* m : methods) own.insert(m->signature());
  std::set<std::string> inherited;
  for (const auto& anc : chain) {
    for (const auto& m : model.type(anc).methods) {
      if (m.is_constructor || m.is_private()) continue;
      const std::string sig = m.signature();
      if (!own.count(sig)) inherited.insert(sig);
    }
  }
  const double inh = static_cast<double>(inherited.size());
  if (inh + nom == 0) {
    v.MFA = 0;
    out.degenerate.push_back("MFA");
  } else {
    v.MFA = inh / (inh + nom);
  }

  if (methods.empty() || t.fields.empty()) {
    v.LCOM = 0;
    out.degenerate.push_back("LCOM");
  } else {
    double touches = 0;
    for (const auto& f : t.fields) {
      for (const auto* m : methods) {
        if (m->body.accessed_fields.count(f.name)) touches += 1;
      }
    }
    v.LCOM = std::clamp(1.0 - touches / (nom * static_cast<double>(t.fields.size())), 0.0, 1.0);
  }

  v.LOC = t.line_range.length();
  for (const auto& m : t.methods) {
    MethodMetrics mm;
    mm.signature = m.signature();
    mm.cc = cyclomatic_complexity(m);
    mm.loc = m.body.loc;
    mm.param_count = static_cast<int>(m.params.size());
    v.max_cc = std::max(v.max_cc, static_cast<double>(mm.cc));
    out.methods.push_back(std::move(mm));
  }
  return out;
}

int count_hierarchies(const DesignModel& model, const std::vector<std::string>& types) {
  std::set<std::string> in_scope(types.begin(), types.end());
  std::set<std::string> roots;
  for (const auto& fqn : types) {
    auto it = model.hierarchy().find(fqn);
    if (it == model.hierarchy().end()) continue;
    // Walk up to the roots of this type; each reached root has a descendant.
    for (const auto& anc : source::ancestors(model, fqn)) {
      if (!in_scope.count(anc)) continue;
      auto up = model.hierarchy().find(anc);
      bool is_root = up == model.hierarchy().end();
      if (!is_root) {
        is_root = std::none_of(up->second.begin(), up->second.end(),
                               [&](const std::string& p) { return in_scope.count(p) > 0; });
      }
      if (is_root) roots.insert(anc);
    }
  }
  return static_cast<int>(roots.size());
}

DesignMetrics compute_design_metrics(const DesignModel& model,
                                     const depgraph::DependencyGraph& graph) {
  DesignMetrics out;
  const std::vector<std::string> types = model.main_types();
  MetricVector sum;
  for (const auto& fqn : types) {
    out.classes.push_back(compute_class_metrics(model, graph, fqn));
    sum = sum + out.classes.back().values;
  }
  if (!types.empty()) out.aggregate = sum * (1.0 / static_cast<double>(types.size()));
  out.aggregate.DSC = static_cast<double>(types.size());
  out.aggregate.NOH = count_hierarchies(model, types);
  return out;
}

const std::vector<std::string>& class_columns() {
  static const std::vector<std::string> kColumns = {"fqn", "DCC", "CAM", "CIS", "NOM",
                                                    "NOP", "DAM", "MOA", "MFA", "ANA",
                                                    "LCOM", "LOC", "max_cc"};
  return kColumns;
}

std::string to_csv(const DesignMetrics& metrics) {
  std::string out;
  const auto& cols = class_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& c : metrics.classes) {
    out += c.fqn;
    for (std::size_t i = 1; i < cols.size(); ++i) out += "," + format_number(c.values.get(cols[i]));
    out += "\n";
  }
  return out;
}

nlohmann::json to_json(const MetricVector& v) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& name : MetricVector::names()) j[name] = v.get(name);
  return j;
}

MetricVector metric_vector_from_json(const nlohmann::json& j) {
  MetricVector v;
  for (const auto& [key, value] : j.items()) v.at(key) = value.get<double>();
  return v;
}

nlohmann::json to_json(const ClassMetrics& c) {
  nlohmann::json values = nlohmann::json::object();
  for (std::size_t i = 1; i < class_columns().size(); ++i) {
    values[class_columns()[i]] = c.values.get(class_columns()[i]);
  }
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& m : c.methods) {
    methods.push_back(
        {{"signature", m.signature}, {"cc", m.cc}, {"loc", m.loc}, {"params", m.param_count}});
  }
  return {{"fqn", c.fqn}, {"metrics", values}, {"methods", methods}, {"degenerate", c.degenerate}};
}

nlohmann::json to_json(const DesignMetrics& d) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : d.classes) classes.push_back(to_json(c));
  return {{"design", to_json(d.aggregate)}, {"classes", classes}};
}

}  // namespace refagent::metrics
