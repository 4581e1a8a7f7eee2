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

#include "refagent/smells/smells.h"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <tuple>

#include "refagent/error.h"
#include "refagent/metrics/metrics.h"

namespace refagent::smells {

using source::MethodDecl;
using source::Modifier;
using source::TypeDecl;

namespace {

bool has_main(const TypeDecl& t) {
  for (const auto& m : t.methods) {
    if (m.name == "main" && m.modifiers.has(Modifier::kStatic) && m.is_public() &&
        m.params.size() == 1 && m.params[0].type.name == "String" &&
        (m.params[0].type.dims == 1 || m.params[0].varargs)) {
      return true;
    }
  }
  return false;
}

void method_rule(std::vector<SmellInstance>& out, const std::string& kind, const TypeDecl& t,
                 const MethodDecl& m, const std::string& evidence) {
  out.push_back({kind, Category::kImplementation, t.fqn, m.signature(), m.line_range, evidence});
}

void detect_long_method(const DetectionContext& ctx, const TypeDecl& t,
                        std::vector<SmellInstance>& out) {
  for (const auto& m : t.methods) {
    if (m.body.loc > ctx.thresholds.long_method_loc) {
      method_rule(out, "LongMethod", t, m,
                  fmt::format("loc {} > {}", m.body.loc, ctx.thresholds.long_method_loc));
    }
  }
}

void detect_complex_method(const DetectionContext& ctx, const TypeDecl& t,
                           std::vector<SmellInstance>& out) {
  for (const auto& m : t.methods) {
    int cc = metrics::cyclomatic_complexity(m);
    if (cc > ctx.thresholds.complex_method_cc) {
      method_rule(out, "ComplexMethod", t, m,
                  fmt::format("cc {} > {}", cc, ctx.thresholds.complex_method_cc));
    }
  }
}

void detect_long_parameter_list(const DetectionContext& ctx, const TypeDecl& t,
                                std::vector<SmellInstance>& out) {
  for (const auto& m : t.methods) {
    int n = static_cast<int>(m.params.size());
    if (n >= ctx.thresholds.long_params) {
      method_rule(out, "LongParameterList", t, m,
                  fmt::format("params {} >= {}", n, ctx.thresholds.long_params));
    }
  }
}

void detect_magic_number(const DetectionContext& ctx, const TypeDecl& t,
                         std::vector<SmellInstance>& out) {
  const auto& allow = ctx.thresholds.magic_allowlist;
  for (const auto& m : t.methods) {
    for (const auto& lit : m.body.numeric_literals) {
      if (allow.count(lit.value)) continue;
      out.push_back({"MagicNumber", Category::kImplementation, t.fqn, m.signature(),
                     {lit.line, lit.line}, "literal " + lit.text});
    }
  }
  for (const auto& f : t.fields) {
    if (f.is_constant) continue;
    for (const auto& lit : f.initializer_literals) {
      if (allow.count(lit.value)) continue;
      out.push_back({"MagicNumber", Category::kImplementation, t.fqn, std::nullopt,
                     {lit.line, lit.line}, "literal " + lit.text + " in field " + f.name});
    }
  }
}

void detect_deficient_encapsulation(const DetectionContext&, const TypeDecl& t,
                                    std::vector<SmellInstance>& out) {
  for (const auto& f : t.fields) {
    if (f.modifiers.has(Modifier::kPublic) && !f.is_constant) {
      out.push_back({"DeficientEncapsulation", Category::kDesign, t.fqn, std::nullopt,
                     {f.line, f.line}, "public field " + f.name});
    }
  }
}

void detect_insufficient_modularization(const DetectionContext& ctx, const TypeDecl& t,
                                        std::vector<SmellInstance>& out) {
  int nom = 0;
  for (const auto& m : t.methods) nom += m.is_constructor ? 0 : 1;
  int loc = t.line_range.length();
  std::vector<std::string> reasons;
  if (nom > ctx.thresholds.large_class_nom) {
    reasons.push_back(fmt::format("nom {} > {}", nom, ctx.thresholds.large_class_nom));
  }
  if (loc > ctx.thresholds.large_class_loc) {
    reasons.push_back(fmt::format("loc {} > {}", loc, ctx.thresholds.large_class_loc));
  }
  if (!reasons.empty()) {
    out.push_back({"InsufficientModularization", Category::kDesign, t.fqn, std::nullopt,
                   t.line_range, fmt::format("{}", fmt::join(reasons, ", "))});
  }
}

void detect_unutilized_abstraction(const DetectionContext& ctx, const TypeDecl& t,
                                   std::vector<SmellInstance>& out) {
  if (has_main(t) || ctx.thresholds.entry_points.count(t.fqn)) return;
  if (!ctx.model.children(t.fqn).empty()) return;
  for (const auto& e : ctx.graph.incoming(t.fqn)) {
    if (!ctx.model.is_test(e.from)) return;
  }
  out.push_back({"UnutilizedAbstraction", Category::kDesign, t.fqn, std::nullopt, t.line_range,
                 "no incoming dependencies"});
}

void detect_cyclic_dependency(const DetectionContext& ctx, const TypeDecl& t,
                              std::vector<SmellInstance>& out) {
  auto it = ctx.cycle_of.find(t.fqn);
  if (it == ctx.cycle_of.end()) return;
  out.push_back({"CyclicDependency", Category::kDesign, t.fqn, std::nullopt, t.line_range,
                 fmt::format("cycle {}", fmt::join(it->second, " -> "))});
}

}  // namespace

const char* to_string(Category c) {
  return c == Category::kDesign ? "design" : "implementation";
}

const std::vector<SmellRule>& catalog() {
  static const std::vector<SmellRule> kCatalog = {
      {"LongMethod", Category::kImplementation, detect_long_method},
      {"ComplexMethod", Category::kImplementation, detect_complex_method},
      {"LongParameterList", Category::kImplementation, detect_long_parameter_list},
      {"MagicNumber", Category::kImplementation, detect_magic_number},
      {"DeficientEncapsulation", Category::kDesign, detect_deficient_encapsulation},
      {"InsufficientModularization", Category::kDesign, detect_insufficient_modularization},
      {"UnutilizedAbstraction", Category::kDesign, detect_unutilized_abstraction},
      {"CyclicDependency", Category::kDesign, detect_cyclic_dependency},
  };
  return kCatalog;
}

std::vector<std::string> catalog_kinds() {
  std::vector<std::string> out;
  for (const auto& r : catalog()) out.push_back(r.kind);
  return out;
}

std::vector<SmellInstance> detect_smells(const source::DesignModel& model,
                                         const depgraph::DependencyGraph& graph,
                                         const Thresholds& thresholds) {
  DetectionContext ctx{model, graph, thresholds, {}};
  for (const auto& scc : depgraph::find_cycles(graph)) {
    for (const auto& member : scc) ctx.cycle_of[member] = scc;
  }
  std::vector<SmellInstance> out;
  for (const auto& fqn : model.main_types()) {
    const TypeDecl& t = model.type(fqn);
    for (const auto& rule : catalog()) rule.detect(ctx, t, out);
  }
  std::sort(out.begin(), out.end(), [](const SmellInstance& a, const SmellInstance& b) {
    return std::tie(a.fqn, a.line_range, a.kind, a.method, a.evidence) <
           std::tie(b.fqn, b.line_range, b.kind, b.method, b.evidence);
  });
  return out;
}

std::map<std::string, DiffCounts> smell_diff(const std::vector<SmellInstance>& before,
                                             const std::vector<SmellInstance>& after) {
  using Key = std::tuple<std::string, std::string, std::string>;
  auto key = [](const SmellInstance& s) { return Key{s.kind, s.fqn, s.method.value_or("")}; };
  std::map<Key, std::pair<int, int>> counts;
  for (const auto& s : before) counts[key(s)].first++;
  for (const auto& s : after) counts[key(s)].second++;
  std::map<std::string, DiffCounts> out;
  for (const auto& kind : catalog_kinds()) out[kind];
  for (const auto& [k, c] : counts) {
    DiffCounts& d = out[std::get<0>(k)];
    int same = std::min(c.first, c.second);
    d.unchanged += same;
    d.removed += c.first - same;
    d.introduced += c.second - same;
  }
  return out;
}

double smell_reduction_rate(double before_count, double after_count) {
  if (before_count == 0) throw UndefinedRate();
  return (before_count - after_count) / before_count * 100.0;
}

nlohmann::json to_json(const std::vector<SmellInstance>& smells) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : smells) {
    out.push_back({{"kind", s.kind},
                   {"category", to_string(s.category)},
                   {"fqn", s.fqn},
                   {"method", s.method ? nlohmann::json(*s.method) : nlohmann::json(nullptr)},
                   {"start", s.line_range.start},
                   {"end", s.line_range.end},
                   {"evidence", s.evidence}});
  }
  return out;
}

std::vector<SmellInstance> smells_from_json(const nlohmann::json& j) {
  std::vector<SmellInstance> out;
  for (const auto& e : j) {
    SmellInstance s;
    s.kind = e.at("kind").get<std::string>();
    s.category = e.at("category").get<std::string>() == "design" ? Category::kDesign
                                                                  : Category::kImplementation;
    s.fqn = e.at("fqn").get<std::string>();
    if (!e.at("method").is_null()) s.method = e.at("method").get<std::string>();
    s.line_range = {e.at("start").get<int>(), e.at("end").get<int>()};
    s.evidence = e.value("evidence", "");
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace refagent::smells
