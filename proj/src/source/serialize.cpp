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

#include "refagent/source/serialize.h"

namespace refagent::source {

using nlohmann::json;

namespace {

TypeKind kind_from_string(const std::string& s) {
  if (s == "interface") return TypeKind::kInterface;
  if (s == "enum") return TypeKind::kEnum;
  return TypeKind::kClass;
}

json literals_json(const std::vector<NumericLiteral>& lits) {
  json out = json::array();
  for (const auto& l : lits) out.push_back({{"text", l.text}, {"value", l.value}, {"line", l.line}});
  return out;
}

std::vector<NumericLiteral> literals_from(const json& j) {
  std::vector<NumericLiteral> out;
  for (const auto& e : j) {
    out.push_back({e.at("text").get<std::string>(), e.at("value").get<double>(),
                   e.at("line").get<int>()});
  }
  return out;
}

}  // namespace

void to_json(json& j, const LineRange& r) { j = json::array({r.start, r.end}); }
void from_json(const json& j, LineRange& r) {
  r.start = j.at(0).get<int>();
  r.end = j.at(1).get<int>();
}

void to_json(json& j, const TypeRef& r) {
  j = {{"name", r.name}, {"dims", r.dims}, {"resolved", r.resolved}, {"external", r.external}};
}
void from_json(const json& j, TypeRef& r) {
  r.name = j.at("name").get<std::string>();
  r.dims = j.value("dims", 0);
  r.resolved = j.value("resolved", "");
  r.external = j.value("external", false);
}

void to_json(json& j, const MethodDecl& m) {
  json params = json::array();
  for (const auto& p : m.params) {
    params.push_back({{"name", p.name}, {"type", p.type}, {"varargs", p.varargs}});
  }
  json calls = json::array();
  for (const auto& c : m.body.calls) {
    calls.push_back({{"receiver", c.receiver}, {"name", c.name}, {"arity", c.arity}, {"line", c.line}});
  }
  json locals = json::array();
  for (const auto& l : m.body.locals) locals.push_back({{"name", l.name}, {"type", l.type}});
  j = {
      {"name", m.name},
      {"signature", m.signature()},
      {"params", params},
      {"return_type", m.return_type},
      {"modifiers", m.modifiers.bits()},
      {"is_constructor", m.is_constructor},
      {"has_body", m.has_body},
      {"annotations", m.annotations},
      {"type_params", m.type_params},
      {"line_range", m.line_range},
      {"body",
       {{"loc", m.body.loc},
        {"decision_points", m.body.decision_points},
        {"accessed_fields", m.body.accessed_fields},
        {"invoked_types", m.body.invoked_types},
        {"calls", calls},
        {"numeric_literals", literals_json(m.body.numeric_literals)},
        {"locals", locals}}},
  };
}

void from_json(const json& j, MethodDecl& m) {
  m.name = j.at("name").get<std::string>();
  m.params.clear();
  for (const auto& p : j.at("params")) {
    m.params.push_back({p.at("name").get<std::string>(), p.at("type").get<TypeRef>(),
                        p.value("varargs", false)});
  }
  m.return_type = j.at("return_type").get<TypeRef>();
  m.modifiers = ModifierSet(j.at("modifiers").get<std::uint32_t>());
  m.is_constructor = j.at("is_constructor").get<bool>();
  m.has_body = j.at("has_body").get<bool>();
  m.annotations = j.at("annotations").get<std::vector<std::string>>();
  m.type_params = j.at("type_params").get<std::vector<std::string>>();
  m.line_range = j.at("line_range").get<LineRange>();
  const json& b = j.at("body");
  m.body = {};
  m.body.loc = b.at("loc").get<int>();
  m.body.decision_points = b.at("decision_points").get<int>();
  m.body.accessed_fields = b.at("accessed_fields").get<std::set<std::string>>();
  m.body.invoked_types = b.at("invoked_types").get<std::vector<TypeRef>>();
  for (const auto& c : b.at("calls")) {
    m.body.calls.push_back({c.at("receiver").get<std::string>(), c.at("name").get<std::string>(),
                            c.at("arity").get<int>(), c.at("line").get<int>()});
  }
  m.body.numeric_literals = literals_from(b.at("numeric_literals"));
  for (const auto& l : b.at("locals")) {
    m.body.locals.push_back({l.at("name").get<std::string>(), l.at("type").get<TypeRef>()});
  }
}

void to_json(json& j, const FieldDecl& f) {
  j = {{"name", f.name},
       {"type", f.type},
       {"modifiers", f.modifiers.bits()},
       {"is_constant", f.is_constant},
       {"line", f.line},
       {"initializer_literals", literals_json(f.initializer_literals)}};
}

void from_json(const json& j, FieldDecl& f) {
  f.name = j.at("name").get<std::string>();
  f.type = j.at("type").get<TypeRef>();
  f.modifiers = ModifierSet(j.at("modifiers").get<std::uint32_t>());
  f.is_constant = j.at("is_constant").get<bool>();
  f.line = j.at("line").get<int>();
  f.initializer_literals = literals_from(j.at("initializer_literals"));
}

void to_json(json& j, const TypeDecl& t) {
  j = {{"fqn", t.fqn},
       {"simple_name", t.simple_name},
       {"package", t.package},
       {"outer_fqn", t.outer_fqn},
       {"kind", to_string(t.kind)},
       {"supertype", t.supertype ? json(*t.supertype) : json(nullptr)},
       {"interfaces", t.interfaces},
       {"fields", t.fields},
       {"methods", t.methods},
       {"modifiers", t.modifiers.bits()},
       {"type_params", t.type_params},
       {"line_range", t.line_range},
       {"unit_path", t.unit_path},
       {"is_test", t.is_test}};
}

void from_json(const json& j, TypeDecl& t) {
  t.fqn = j.at("fqn").get<std::string>();
  t.simple_name = j.at("simple_name").get<std::string>();
  t.package = j.at("package").get<std::string>();
  t.outer_fqn = j.at("outer_fqn").get<std::string>();
  t.kind = kind_from_string(j.at("kind").get<std::string>());
  if (j.at("supertype").is_null()) {
    t.supertype.reset();
  } else {
    t.supertype = j.at("supertype").get<TypeRef>();
  }
  t.interfaces = j.at("interfaces").get<std::vector<TypeRef>>();
  t.fields = j.at("fields").get<std::vector<FieldDecl>>();
  t.methods = j.at("methods").get<std::vector<MethodDecl>>();
  t.modifiers = ModifierSet(j.at("modifiers").get<std::uint32_t>());
  t.type_params = j.at("type_params").get<std::vector<std::string>>();
  t.line_range = j.at("line_range").get<LineRange>();
  t.unit_path = j.at("unit_path").get<std::string>();
  t.is_test = j.at("is_test").get<bool>();
}

void to_json(json& j, const SourceUnit& u) {
  json imports = json::array();
  for (const auto& i : u.imports) {
    imports.push_back({{"name", i.name}, {"static", i.is_static}, {"on_demand", i.on_demand}});
  }
  j = {{"path", u.path},       {"package", u.package},       {"imports", imports},
       {"types", u.types},     {"raw_text", u.raw_text},     {"line_count", u.line_count},
       {"is_test", u.is_test}};
}

void from_json(const json& j, SourceUnit& u) {
  u.path = j.at("path").get<std::string>();
  u.package = j.at("package").get<std::string>();
  u.imports.clear();
  for (const auto& i : j.at("imports")) {
    u.imports.push_back({i.at("name").get<std::string>(), i.at("static").get<bool>(),
                         i.at("on_demand").get<bool>()});
  }
  u.types = j.at("types").get<std::vector<TypeDecl>>();
  u.raw_text = j.at("raw_text").get<std::string>();
  u.line_count = j.at("line_count").get<int>();
  u.is_test = j.at("is_test").get<bool>();
}

}  // namespace refagent::source
