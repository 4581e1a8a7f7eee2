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

#include "refagent/source/design_model.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "refagent/error.h"
#include "refagent/source/lexer.h"
#include "refagent/source/parser.h"

namespace refagent::source {

namespace {

std::string first_segment(const std::string& name) {
  auto dot = name.find('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

std::string rest_after_first(const std::string& name) {
  auto dot = name.find('.');
  return dot == std::string::npos ? "" : name.substr(dot);
}

}  // namespace

const TypeDecl& DesignModel::type(const std::string& fqn) const {
  auto it = types_.find(fqn);
  if (it == types_.end()) throw UnknownType(fqn);
  return it->second;
}

const SourceUnit& DesignModel::unit_of(const std::string& fqn) const {
  auto it = unit_index_.find(fqn);
  if (it == unit_index_.end()) throw UnknownType(fqn);
  return units_[it->second];
}

bool DesignModel::is_test(const std::string& fqn) const { return type(fqn).is_test; }

std::vector<std::string> DesignModel::main_types() const {
  std::vector<std::string> out;
  for (const auto& [fqn, t] : types_) {
    if (!t.is_test) out.push_back(fqn);
  }
  return out;
}

std::vector<std::string> DesignModel::main_top_level_types() const {
  std::vector<std::string> out;
  for (const auto& [fqn, t] : types_) {
    if (!t.is_test && t.is_top_level()) out.push_back(fqn);
  }
  return out;
}

std::vector<std::string> DesignModel::test_types() const {
  std::vector<std::string> out;
  for (const auto& [fqn, t] : types_) {
    if (t.is_test) out.push_back(fqn);
  }
  return out;
}

std::vector<std::string> DesignModel::children(const std::string& fqn) const {
  std::vector<std::string> out;
  for (const auto& [child, parents] : hierarchy_) {
    if (std::find(parents.begin(), parents.end(), fqn) != parents.end()) out.push_back(child);
  }
  return out;
}

std::optional<std::string> DesignModel::resolve(const std::string& name,
                                                const TypeDecl& context) const {
  if (name.empty()) return std::nullopt;
  const std::string head = first_segment(name);
  const std::string tail = rest_after_first(name);
  auto exists = [&](const std::string& fqn) -> std::optional<std::string> {
    if (types_.count(fqn)) return fqn;
    return std::nullopt;
  };

  // Member types of the context and its enclosing types.
  for (std::string scope = context.fqn; !scope.empty();) {
    if (auto hit = exists(scope + "." + name)) return hit;
    auto it = types_.find(scope);
    scope = it == types_.end() ? "" : it->second.outer_fqn;
  }
  if (auto hit = exists(name)) return hit;

  auto unit_it = unit_index_.find(context.fqn);
  const SourceUnit* unit = unit_it == unit_index_.end() ? nullptr : &units_[unit_it->second];
  if (unit) {
    for (const auto& imp : unit->imports) {
      if (imp.is_static || imp.on_demand) continue;
      auto dot = imp.name.rfind('.');
      std::string simple = dot == std::string::npos ? imp.name : imp.name.substr(dot + 1);
      if (simple == head) {
        if (auto hit = exists(imp.name + tail)) return hit;
      }
    }
  }
  const std::string pkg = context.package;
  if (auto hit = exists(pkg.empty() ? name : pkg + "." + name)) return hit;
  if (unit) {
    for (const auto& imp : unit->imports) {
      if (!imp.on_demand || imp.is_static) continue;
      if (auto hit = exists(imp.name + "." + name)) return hit;
    }
  }
  return std::nullopt;
}

std::string DesignModel::source_text(const std::string& fqn) const {
  const TypeDecl& t = type(fqn);
  const SourceUnit& unit = unit_of(fqn);
  if (t.is_top_level()) return unit.raw_text;
  std::istringstream in(unit.raw_text);
  std::string line;
  std::string out;
  for (int n = 1; std::getline(in, line); ++n) {
    if (n >= t.line_range.start && n <= t.line_range.end) out += line + "\n";
  }
  return out;
}

DesignModel DesignModel::build(std::vector<SourceUnit> units) {
  DesignModel model;
  model.units_ = std::move(units);
  for (std::size_t u = 0; u < model.units_.size(); ++u) {
    for (auto& t : model.units_[u].types) {
      t.is_test = model.units_[u].is_test;
      t.unit_path = model.units_[u].path;
      if (model.types_.count(t.fqn)) throw DuplicateType(t.fqn);
      model.types_.emplace(t.fqn, t);
      model.unit_index_.emplace(t.fqn, u);
    }
  }

  for (auto& [fqn, t] : model.types_) {
    std::set<std::string> type_vars(t.type_params.begin(), t.type_params.end());
    for (std::string scope = t.outer_fqn; !scope.empty();) {
      auto it = model.types_.find(scope);
      if (it == model.types_.end()) break;
      type_vars.insert(it->second.type_params.begin(), it->second.type_params.end());
      scope = it->second.outer_fqn;
    }
    auto resolve_ref = [&](TypeRef& ref, const std::set<std::string>& extra_vars) {
      if (ref.name.empty() || is_primitive_type(ref.name) || ref.name == "var") return;
      if (type_vars.count(ref.name) || extra_vars.count(ref.name)) return;
      if (auto hit = model.resolve(ref.name, t)) {
        ref.resolved = *hit;
        ref.external = false;
      } else {
        ref.resolved.clear();
        ref.external = true;
      }
    };
    const std::set<std::string> none;
    if (t.supertype) resolve_ref(*t.supertype, none);
    for (auto& i : t.interfaces) resolve_ref(i, none);
    for (auto& f : t.fields) resolve_ref(f.type, none);
    for (auto& m : t.methods) {
      std::set<std::string> method_vars(m.type_params.begin(), m.type_params.end());
      resolve_ref(m.return_type, method_vars);
      for (auto& p : m.params) resolve_ref(p.type, method_vars);
      for (auto& inv : m.body.invoked_types) resolve_ref(inv, method_vars);
      for (auto& local : m.body.locals) resolve_ref(local.type, method_vars);
    }
  }

  for (const auto& [fqn, t] : model.types_) {
    std::vector<std::string> parents;
    if (t.supertype && t.supertype->is_project()) parents.push_back(t.supertype->resolved);
    if (t.kind == TypeKind::kInterface) {
      for (const auto& i : t.interfaces) {
        if (i.is_project()) parents.push_back(i.resolved);
      }
    }
    if (!parents.empty()) model.hierarchy_.emplace(fqn, std::move(parents));
  }

  // Reject inheritance cycles: depth-first search with colouring.
  std::map<std::string, int> colour;
  std::function<void(const std::string&)> visit = [&](const std::string& fqn) {
    colour[fqn] = 1;
    auto it = model.hierarchy_.find(fqn);
    if (it != model.hierarchy_.end()) {
      for (const auto& parent : it->second) {
        if (colour[parent] == 1) throw CyclicHierarchy(parent);
        if (colour[parent] == 0) visit(parent);
      }
    }
    colour[fqn] = 2;
  };
  for (const auto& [fqn, _] : model.types_) {
    if (colour[fqn] == 0) visit(fqn);
  }
  return model;
}

std::vector<std::string> ancestors(const DesignModel& model, const std::string& fqn,
                                   bool include_external) {
  const TypeDecl& start = model.type(fqn);
  std::vector<std::string> out;
  std::set<std::string> seen{fqn};
  std::deque<std::string> queue{fqn};
  std::string external_marker;
  while (!queue.empty()) {
    std::string current = queue.front();
    queue.pop_front();
    auto it = model.hierarchy().find(current);
    if (it != model.hierarchy().end()) {
      for (const auto& parent : it->second) {
        if (seen.insert(parent).second) {
          out.push_back(parent);
          queue.push_back(parent);
        }
      }
    }
    const TypeDecl& t = model.type(current);
    if (t.supertype && t.supertype->external && external_marker.empty()) {
      external_marker = t.supertype->name;
    }
  }
  (void)start;
  if (include_external && !external_marker.empty()) out.push_back(external_marker);
  return out;
}

std::vector<JavaFile> list_java_files(const std::filesystem::path& root,
                                     const ProjectLayout& layout) {
  namespace fs = std::filesystem;
  std::vector<JavaFile> files;
  std::set<std::string> seen;
  auto scan = [&](const fs::path& dir, bool is_test) {
    if (!fs::is_directory(dir)) return;
    for (auto it = fs::recursive_directory_iterator(dir); it != fs::recursive_directory_iterator();
         ++it) {
      const auto name = it->path().filename().string();
      if (it->is_directory() && (name == ".refagent" || name == "target" || name == ".git")) {
        it.disable_recursion_pending();
        continue;
      }
      if (!it->is_regular_file() || it->path().extension() != ".java") continue;
      if (name == "module-info.java") continue;
      std::string rel = fs::relative(it->path(), root).generic_string();
      if (seen.insert(rel).second) files.push_back({it->path(), rel, is_test});
    }
  };
  bool any_root = false;
  for (const auto& r : layout.source_roots) {
    if (fs::is_directory(root / r)) any_root = true;
  }
  // Test roots first so that, when a test root is nested in a source root,
  // its files keep their test classification.
  for (const auto& r : layout.test_roots) scan(root / r, true);
  if (any_root) {
    for (const auto& r : layout.source_roots) scan(root / r, false);
  } else {
    scan(root, false);
  }
  std::sort(files.begin(), files.end(),
            [](const JavaFile& a, const JavaFile& b) { return a.rel < b.rel; });
  return files;
}

std::vector<SourceUnit> load_project(const std::filesystem::path& root,
                                     const ProjectLayout& layout) {
  auto files = list_java_files(root, layout);
  std::vector<SourceUnit> units;
  for (const auto& f : files) {
    std::ifstream in(f.abs, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      SourceUnit unit = parse_source(buf.str(), f.rel);
      unit.is_test = f.is_test;
      units.push_back(std::move(unit));
    } catch (const ParseError& e) {
      throw ParseError(e.line(), f.rel + ": " + e.message()).at_column(e.column());
    }
  }
  return units;
}

DesignModel load_design_model(const std::filesystem::path& root, const ProjectLayout& layout) {
  return DesignModel::build(load_project(root, layout));
}

}  // namespace refagent::source
